#include "lbmfd/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "lbmfd/error.hpp"

namespace lbmfd {

// ---------------------------------------------------------------------------
// Monomial

Monomial Monomial::var(Param p, int exp) {
    Monomial m;
    if (exp < 0) raise(ErrorKind::Internal, "negative parameter exponent");
    if (exp > 0) m.factors_.emplace_back(p.id(), exp);
    return m;
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& [id, e] : factors_) d += e;
    return d;
}

int Monomial::degree_in(Param p) const {
    for (const auto& [id, e] : factors_)
        if (id == p.id()) return e;
    return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.factors_.reserve(factors_.size() + o.factors_.size());
    auto a = factors_.begin(), b = o.factors_.begin();
    while (a != factors_.end() || b != o.factors_.end()) {
        if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            r.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            r.factors_.push_back(*b++);
        } else {
            r.factors_.emplace_back(a->first, a->second + b->second);
            ++a, ++b;
        }
    }
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    auto a = factors_.begin();
    auto b = o.factors_.begin();
    while (a != factors_.end()) {
        while (b != o.factors_.end() && b->first < a->first) ++b;
        if (b == o.factors_.end() || b->first != a->first || b->second < a->second) return false;
        ++a;
    }
    return true;
}

Monomial Monomial::divide_into(const Monomial& o) const {
    Monomial r;
    auto a = factors_.begin();
    for (auto b = o.factors_.begin(); b != o.factors_.end(); ++b) {
        int e = b->second;
        while (a != factors_.end() && a->first < b->first) ++a;  // unreachable if divides
        if (a != factors_.end() && a->first == b->first) {
            e -= a->second;
            ++a;
        }
        if (e < 0) raise(ErrorKind::Internal, "monomial division underflow");
        if (e > 0) r.factors_.emplace_back(b->first, e);
    }
    return r;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
    int da = a.total_degree(), db = b.total_degree();
    if (da != db) return da < db ? -1 : 1;
    auto ia = a.factors_.begin(), ib = b.factors_.begin();
    while (ia != a.factors_.end() && ib != b.factors_.end()) {
        if (ia->first != ib->first) {
            // The earlier variable is present with a positive power on one
            // side only; that side is lexicographically greater.
            return ia->first < ib->first ? 1 : -1;
        }
        if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
        ++ia, ++ib;
    }
    if (ia != a.factors_.end()) return 1;
    if (ib != b.factors_.end()) return -1;
    return 0;
}

std::string Monomial::str() const {
    if (factors_.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [id, e] : factors_) {
        if (!first) os << "*";
        first = false;
        os << Param::from_id(id).name();
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(const Rational& c) {
    if (!lbmfd::is_zero(c)) terms_.emplace(Monomial::unit(), c);
}

Poly Poly::var(Param p, int exp) {
    Poly r;
    r.terms_.emplace(Monomial::var(p, exp), Rational(1));
    return r;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) raise(ErrorKind::Internal, "constant_value on non-constant " + str());
    return terms_.begin()->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return 0;
    return terms_.rbegin()->first.total_degree();
}

int Poly::degree_in(Param p) const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree_in(p));
    return d;
}

int Poly::valuation_in(Param p) const {
    if (terms_.empty()) return 0;
    int v = -1;
    for (const auto& [m, c] : terms_) {
        int e = m.degree_in(p);
        v = (v < 0) ? e : std::min(v, e);
        if (v == 0) break;
    }
    return v;
}

std::vector<Param> Poly::params() const {
    std::set<int> ids;
    for (const auto& [m, c] : terms_)
        for (const auto& [id, e] : m.factors()) ids.insert(id);
    std::vector<Param> out;
    for (int id : ids) out.push_back(Param::from_id(id));
    return out;
}

const Monomial& Poly::leading_monomial() const {
    if (terms_.empty()) raise(ErrorKind::Internal, "leading term of zero polynomial");
    return terms_.rbegin()->first;
}

const Rational& Poly::leading_coeff() const {
    if (terms_.empty()) raise(ErrorKind::Internal, "leading term of zero polynomial");
    return terms_.rbegin()->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (lbmfd::is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (lbmfd::is_zero(it->second)) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

Poly Poly::operator*(const Rational& c) const {
    Poly r;
    if (lbmfd::is_zero(c)) return r;
    for (const auto& [m, a] : terms_) r.terms_.emplace(m, a * c);
    return r;
}

Poly Poly::divide_exact(const Poly& o) const {
    if (o.is_zero()) raise(ErrorKind::Internal, "division by zero polynomial");
    if (o.is_constant()) return *this * (Rational(1) / o.constant_value());
    Poly q, r = *this;
    const Monomial& lmo = o.leading_monomial();
    const Rational& lco = o.leading_coeff();
    while (!r.is_zero()) {
        const Monomial& lmr = r.leading_monomial();
        if (!lmo.divides(lmr))
            raise(ErrorKind::Internal, "inexact polynomial division: " + str() + " by " + o.str());
        Monomial m = lmo.divide_into(lmr);
        Rational c = r.leading_coeff() / lco;
        q.add_term(m, c);
        Poly sub;
        for (const auto& [mo, co] : o.terms_) sub.add_term(m * mo, c * co);
        r -= sub;
    }
    return q;
}

Poly Poly::shift_down(Param p, int k) const {
    if (k == 0) return *this;
    Poly r;
    for (const auto& [m, c] : terms_) {
        Monomial::Factors f;
        bool ok = false;
        for (const auto& [id, e] : m.factors()) {
            if (id == p.id()) {
                if (e < k) raise(ErrorKind::Internal, "shift_down below valuation");
                ok = true;
                if (e > k) f.emplace_back(id, e - k);
            } else {
                f.emplace_back(id, e);
            }
        }
        if (!ok && k > 0) raise(ErrorKind::Internal, "shift_down below valuation");
        Monomial mm;
        for (auto& fe : f) mm = mm * Monomial::var(Param::from_id(fe.first), fe.second);
        r.add_term(mm, c);
    }
    return r;
}

Poly Poly::substitute_zero(Param p) const {
    Poly r;
    for (const auto& [m, c] : terms_)
        if (m.degree_in(p) == 0) r.add_term(m, c);
    return r;
}

Poly Poly::substitute(Param p, const Rational& value) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        int e = m.degree_in(p);
        if (e == 0) {
            r.add_term(m, c);
        } else {
            Monomial rest;
            for (const auto& [id, ee] : m.factors())
                if (id != p.id()) rest = rest * Monomial::var(Param::from_id(id), ee);
            r.add_term(rest, c * pow_rat(value, e));
        }
    }
    return r;
}

Poly Poly::substitute(Param p, const Poly& value) const {
    Poly r;
    for (const auto& [m, c] : terms_) {
        int e = m.degree_in(p);
        Monomial rest;
        for (const auto& [id, ee] : m.factors())
            if (id != p.id()) rest = rest * Monomial::var(Param::from_id(id), ee);
        Poly term;
        term.add_term(rest, c);
        for (int i = 0; i < e; ++i) term = term * value;
        r += term;
    }
    return r;
}

Rational Poly::evaluate(const std::map<Param, Rational>& bindings) const {
    Rational acc(0);
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (const auto& [id, e] : m.factors()) {
            auto it = bindings.find(Param::from_id(id));
            if (it == bindings.end())
                raise(ErrorKind::Binding, "unbound parameter " + Param::from_id(id).name());
            t *= pow_rat(it->second, e);
        }
        acc += t;
    }
    return acc;
}

std::pair<Rational, Poly> Poly::content_primitive() const {
    if (terms_.empty()) return {Rational(0), Poly()};
    Integer num_gcd(0), den_lcm(1);
    for (const auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
    }
    Rational content(num_gcd, den_lcm);
    content.canonicalize();
    if (sgn(leading_coeff()) < 0) content = -content;
    Poly prim;
    for (const auto& [m, c] : terms_) {
        Rational cc = c / content;
        prim.terms_.emplace(m, cc);
    }
    return {content, prim};
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Print leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rational& c = it->second;
        if (first) {
            if (sgn(c) < 0) os << "-";
        } else {
            os << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        Rational a = abs(c);
        if (it->first.is_unit()) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << "*";
            os << it->first.str();
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// GCD

namespace {

int degree_in_var(const Poly& p, Param x) { return p.degree_in(x); }

// Coefficient of x^k, with x removed.
Poly coeff_of(const Poly& p, Param x, int k) {
    Poly r;
    for (const auto& [m, c] : p.terms()) {
        if (m.degree_in(x) != k) continue;
        Monomial rest;
        for (const auto& [id, e] : m.factors())
            if (id != x.id()) rest = rest * Monomial::var(Param::from_id(id), e);
        r.add_term(rest, c);
    }
    return r;
}

Poly mul_var_pow(const Poly& p, Param x, int k) {
    if (k == 0) return p;
    return p * Poly::var(x, k);
}

Poly gcd_rec(const Poly& a, const Poly& b);

// GCD of the x-coefficients (a polynomial without x).
Poly content_in(const Poly& p, Param x) {
    Poly g;
    int d = degree_in_var(p, x);
    for (int k = 0; k <= d; ++k) {
        Poly c = coeff_of(p, x, k);
        if (c.is_zero()) continue;
        g = g.is_zero() ? c : gcd_rec(g, c);
        if (g.is_constant()) break;
    }
    if (g.is_zero()) return Poly(Rational(1));
    return g;
}

// Pseudo-remainder of f by g with respect to x (up to a factor of a power of
// the leading coefficient of g; harmless, contents are stripped afterwards).
Poly prem(Poly f, const Poly& g, Param x) {
    int dg = degree_in_var(g, x);
    Poly lcg = coeff_of(g, x, dg);
    while (!f.is_zero()) {
        int df = degree_in_var(f, x);
        if (df < dg) break;
        Poly lcf = coeff_of(f, x, df);
        f = f * lcg - mul_var_pow(lcf, x, df - dg) * g;
    }
    return f;
}

Poly gcd_rec(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_constant() || b.is_constant()) return Poly(Rational(1));
    if (a == b) return a;
    // Single-term fast path: gcd of monomials.
    if (a.is_single_term() && b.is_single_term()) {
        const Monomial& ma = a.leading_monomial();
        const Monomial& mb = b.leading_monomial();
        Monomial g;
        for (const auto& [id, e] : ma.factors()) {
            int eb = mb.degree_in(Param::from_id(id));
            if (eb > 0) g = g * Monomial::var(Param::from_id(id), std::min(e, eb));
        }
        Poly r;
        r.add_term(g, Rational(1));
        return r;
    }
    // Main variable: the highest-id parameter present in either.
    int max_id = -1;
    for (const auto& ps : {a.params(), b.params()})
        for (Param p : ps) max_id = std::max(max_id, p.id());
    Param x = Param::from_id(max_id);

    int da = degree_in_var(a, x), db = degree_in_var(b, x);
    if (da == 0) return gcd_rec(a, content_in(b, x));
    if (db == 0) return gcd_rec(content_in(a, x), b);

    Poly ca = content_in(a, x), cb = content_in(b, x);
    Poly c = gcd_rec(ca, cb);
    Poly f = a.divide_exact(ca), g = b.divide_exact(cb);
    if (degree_in_var(f, x) < degree_in_var(g, x)) std::swap(f, g);
    while (true) {
        Poly r = prem(f, g, x);
        if (r.is_zero()) break;
        r = r.divide_exact(content_in(r, x));
        r = r.content_primitive().second;
        f = g;
        g = r;
    }
    if (degree_in_var(g, x) == 0) return c;  // coprime in x
    g = g.divide_exact(content_in(g, x));
    return c * g;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
    if (a.is_zero() && b.is_zero()) return Poly();
    if (a.is_zero()) return b.content_primitive().second;
    if (b.is_zero()) return a.content_primitive().second;
    if (a.is_constant() || b.is_constant()) return Poly(Rational(1));
    Poly g = gcd_rec(a.content_primitive().second, b.content_primitive().second);
    return g.content_primitive().second;
}

Rational rational_from_string(const std::string& s) {
    try {
        Rational r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        raise(ErrorKind::Parse, "malformed rational: '" + s + "'");
    }
}

}  // namespace lbmfd
