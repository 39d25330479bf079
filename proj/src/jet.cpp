#include "lbmfd/jet.hpp"

#include <sstream>

#include "lbmfd/error.hpp"

namespace lbmfd {

std::string JetVar::str() const {
    std::ostringstream os;
    for (int k = 0; k < dt; ++k) os << "dt ";
    static const char* ax[3] = {"dx", "dy", "dw"};
    for (size_t a = 0; a < 3; ++a)
        for (int k = 0; k < dx[a]; ++k) os << ax[a] << " ";
    os << "m" << (moment + 1);
    return os.str();
}

std::string JetVar::latex() const {
    std::ostringstream os;
    if (dt > 0) {
        os << "\\partial_t";
        if (dt > 1) os << "^{" << dt << "}";
        os << " ";
    }
    static const char* ax[3] = {"x", "y", "z"};
    for (size_t a = 0; a < 3; ++a)
        if (dx[a] > 0) {
            os << "\\partial_{" << ax[a] << "}";
            if (dx[a] > 1) os << "^{" << dx[a] << "}";
            os << " ";
        }
    os << "m_{" << (moment + 1) << "}";
    return os.str();
}

JetMono JetMono::var(const JetVar& v, int e) {
    JetMono m;
    if (e > 0) m.factors.emplace_back(v, e);
    return m;
}

JetMono JetMono::operator*(const JetMono& o) const {
    JetMono r;
    auto a = factors.begin();
    auto b = o.factors.begin();
    while (a != factors.end() || b != o.factors.end()) {
        if (b == o.factors.end() || (a != factors.end() && a->first < b->first)) {
            r.factors.push_back(*a++);
        } else if (a == factors.end() || b->first < a->first) {
            r.factors.push_back(*b++);
        } else {
            r.factors.emplace_back(a->first, a->second + b->second);
            ++a, ++b;
        }
    }
    return r;
}

int JetMono::total_degree() const {
    int d = 0;
    for (const auto& [v, e] : factors) d += e;
    return d;
}

bool operator<(const JetMono& a, const JetMono& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db;
    return a.factors < b.factors;
}

JetPoly JetPoly::from_moment_poly(const MomentPoly& p) {
    JetPoly r;
    for (const auto& [exps, c] : p.terms()) {
        JetMono m;
        for (size_t l = 0; l < exps.size(); ++l)
            if (exps[l] > 0)
                m = m * JetMono::var(JetVar{static_cast<int>(l), 0, {0, 0, 0}}, exps[l]);
        r.add_term(m, c);
    }
    return r;
}

void JetPoly::add_term(const JetMono& m, const Coeff& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

JetPoly JetPoly::operator-() const {
    JetPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

JetPoly JetPoly::operator+(const JetPoly& o) const {
    JetPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

JetPoly JetPoly::operator-(const JetPoly& o) const {
    JetPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

JetPoly JetPoly::operator*(const JetPoly& o) const {
    JetPoly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

JetPoly JetPoly::operator*(const Coeff& c) const {
    JetPoly r;
    for (const auto& [m, a] : terms_) r.add_term(m, a * c);
    return r;
}

namespace {

// Leibniz derivative with a caller-supplied variable promotion.
template <class Raise>
JetPoly leibniz(const JetPoly::Terms& terms, Raise&& raise) {
    JetPoly out;
    for (const auto& [m, c] : terms) {
        for (size_t k = 0; k < m.factors.size(); ++k) {
            const auto& [v, e] = m.factors[k];
            JetMono rest;
            for (size_t l = 0; l < m.factors.size(); ++l) {
                if (l == k) {
                    if (e > 1) rest = rest * JetMono::var(v, e - 1);
                } else {
                    rest = rest * JetMono::var(m.factors[l].first, m.factors[l].second);
                }
            }
            out.add_term(rest * JetMono::var(raise(v)), c * Coeff(Rational(e)));
        }
    }
    return out;
}

}  // namespace

JetPoly JetPoly::d_dt() const {
    return leibniz(terms_, [](const JetVar& v) { return JetVar{v.moment, v.dt + 1, v.dx}; });
}

JetPoly JetPoly::d_dx(int axis) const {
    return leibniz(terms_, [axis](const JetVar& v) {
        JetVar r = v;
        r.dx[static_cast<size_t>(axis)] += 1;
        return r;
    });
}

JetPoly JetPoly::apply(const DiffOp& op) const {
    JetPoly out;
    for (const auto& [key, c] : op.terms()) {
        JetPoly cur = *this;
        for (int k = 0; k < key.dt; ++k) cur = cur.d_dt();
        for (int axis = 0; axis < 3; ++axis)
            for (int k = 0; k < key.dx[static_cast<size_t>(axis)]; ++k) cur = cur.d_dx(axis);
        out += cur * c;
    }
    return out;
}

JetPoly JetPoly::substitute(const JetVar& v, const JetPoly& value) const {
    JetPoly out;
    for (const auto& [m, c] : terms_) {
        JetMono rest;
        int power = 0;
        for (const auto& [vv, e] : m.factors) {
            if (vv == v)
                power = e;
            else
                rest = rest * JetMono::var(vv, e);
        }
        if (power == 0) {
            out.add_term(m, c);
            continue;
        }
        JetPoly repl = JetPoly::one();
        for (int k = 0; k < power; ++k) repl = repl * value;
        JetPoly base;
        base.add_term(rest, c);
        out += base * repl;
    }
    return out;
}

Coeff JetPoly::coeff_of_var(const JetVar& v) const {
    auto it = terms_.find(JetMono::var(v));
    return it == terms_.end() ? Coeff() : it->second;
}

int JetPoly::max_dt() const {
    int mx = 0;
    for (const auto& [m, c] : terms_)
        for (const auto& [v, e] : m.factors) mx = std::max(mx, v.dt);
    return mx;
}

std::string JetPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        if (m.factors.empty()) {
            os << c.str();
            continue;
        }
        if (!c.is_one()) os << "(" << c.str() << ")*";
        bool fi = true;
        for (const auto& [v, e] : m.factors) {
            if (!fi) os << "*";
            fi = false;
            os << "(" << v.str() << ")";
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

std::string JetPoly::latex() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool one = c.is_one();
        if (m.factors.empty() || !one) os << c.latex() << (m.factors.empty() ? "" : " \\, ");
        for (const auto& [v, e] : m.factors) {
            if (e > 1) os << "\\left(";
            os << v.latex();
            if (e > 1) os << "\\right)^{" << e << "}";
            os << " ";
        }
    }
    return os.str();
}

}  // namespace lbmfd
