#include "lbmfd/coeff.hpp"

#include <sstream>

#include "lbmfd/error.hpp"

namespace lbmfd {

Coeff::Coeff(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero())
        raise(ErrorKind::MalformedCoefficient, "zero denominator in coefficient");
    normalize();
}

void Coeff::normalize() {
    if (den_.is_zero())
        raise(ErrorKind::MalformedCoefficient, "zero denominator in coefficient");
    if (num_.is_zero()) {
        den_ = Poly(Rational(1));
        return;
    }
    auto [cn, pn] = num_.content_primitive();
    auto [cd, pd] = den_.content_primitive();
    Poly g = poly_gcd(pn, pd);
    if (!g.is_constant()) {
        pn = pn.divide_exact(g);
        pd = pd.divide_exact(g);
        auto [cn2, pn2] = pn.content_primitive();
        auto [cd2, pd2] = pd.content_primitive();
        cn *= cn2;
        cd *= cd2;
        pn = pn2;
        pd = pd2;
    }
    Rational scalar = cn / cd;  // carries sign of num relative to den
    // scalar = p/q in lowest terms; fold p into num and q into den so both
    // carry integer coefficients with coprime contents.
    Rational p(scalar.get_num()), q(scalar.get_den());
    num_ = pn * p;
    den_ = pd * q;
}

bool Coeff::is_one() const {
    return num_.is_constant() && den_.is_constant() && !num_.is_zero() &&
           num_.constant_value() == den_.constant_value();
}

Rational Coeff::rational_value() const {
    if (!is_rational())
        raise(ErrorKind::Binding, "coefficient is not a plain rational: " + str());
    return num_.constant_value() / den_.constant_value();
}

Coeff Coeff::operator-() const {
    Coeff r = *this;
    r.num_ = -r.num_;
    return r;
}

Coeff Coeff::operator+(const Coeff& o) const {
    Coeff r;
    if (den_ == o.den_) {
        r.num_ = num_ + o.num_;
        r.den_ = den_;
    } else {
        r.num_ = num_ * o.den_ + o.num_ * den_;
        r.den_ = den_ * o.den_;
    }
    r.normalize();
    return r;
}

Coeff Coeff::operator-(const Coeff& o) const { return *this + (-o); }

Coeff Coeff::operator*(const Coeff& o) const {
    Coeff r;
    r.num_ = num_ * o.num_;
    r.den_ = den_ * o.den_;
    r.normalize();
    return r;
}

Coeff Coeff::operator/(const Coeff& o) const {
    if (o.is_zero()) raise(ErrorKind::MalformedCoefficient, "division by zero coefficient");
    Coeff r;
    r.num_ = num_ * o.den_;
    r.den_ = den_ * o.num_;
    r.normalize();
    return r;
}

Coeff Coeff::inverse() const { return Coeff(Rational(1)) / *this; }

Coeff Coeff::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Coeff acc(Rational(1)), b = *this;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

bool operator<(const Coeff& a, const Coeff& b) {
    // Total order via string-free structural walk: compare term maps.
    auto cmp_poly = [](const Poly& x, const Poly& y) -> int {
        auto ix = x.terms().begin(), iy = y.terms().begin();
        while (ix != x.terms().end() && iy != y.terms().end()) {
            int c = Monomial::compare(ix->first, iy->first);
            if (c != 0) return c;
            if (ix->second != iy->second) return ix->second < iy->second ? -1 : 1;
            ++ix, ++iy;
        }
        if (ix != x.terms().end()) return 1;
        if (iy != y.terms().end()) return -1;
        return 0;
    };
    int c = cmp_poly(a.num(), b.num());
    if (c != 0) return c < 0;
    return cmp_poly(a.den(), b.den()) < 0;
}

bool Coeff::equal_cross(const Coeff& a, const Coeff& b) {
    return (a.num_ * b.den_) == (b.num_ * a.den_);
}

Coeff Coeff::limit_at_zero(Param p) const {
    int vnum = num_.is_zero() ? 0 : num_.valuation_in(p);
    int vden = den_.valuation_in(p);
    if (num_.is_zero()) return Coeff();
    if (vnum < vden) raise(ErrorKind::Pole, "pole at " + p.name() + " = 0 in " + str());
    Poly n = num_.shift_down(p, vden).substitute_zero(p);
    Poly d = den_.shift_down(p, vden).substitute_zero(p);
    return Coeff(n, d);
}

Coeff Coeff::substitute(Param p, const Rational& value) const {
    Poly d = den_.substitute(p, value);
    if (d.is_zero())
        raise(ErrorKind::Pole, "denominator vanishes at " + p.name() + " = " + value.get_str());
    return Coeff(num_.substitute(p, value), d);
}

Coeff Coeff::substitute(Param p, const Coeff& value) const {
    // num/den with p := a/b. Clear b by scaling both sides by b^max_deg.
    int dn = num_.degree_in(p), dd = den_.degree_in(p);
    int dmax = std::max(dn, dd);
    auto lift = [&](const Poly& poly) {
        Poly acc;
        for (const auto& [m, c] : poly.terms()) {
            int e = m.degree_in(p);
            Monomial rest;
            for (const auto& [id, ee] : m.factors())
                if (id != p.id()) rest = rest * Monomial::var(Param::from_id(id), ee);
            Poly t;
            t.add_term(rest, c);
            for (int i = 0; i < e; ++i) t = t * value.num();
            for (int i = 0; i < dmax - e; ++i) t = t * value.den();
            acc += t;
        }
        return acc;
    };
    Poly n = lift(num_), d = lift(den_);
    if (d.is_zero()) raise(ErrorKind::Pole, "denominator vanishes under substitution");
    return Coeff(n, d);
}

Rational Coeff::evaluate(const std::map<Param, Rational>& bindings) const {
    Rational d = den_.evaluate(bindings);
    if (lbmfd::is_zero(d))
        raise(ErrorKind::MalformedCoefficient, "denominator evaluates to zero in " + str());
    return num_.evaluate(bindings) / d;
}

std::vector<Param> Coeff::params() const {
    std::vector<Param> ps = num_.params();
    for (Param p : den_.params()) {
        bool found = false;
        for (Param q : ps)
            if (q == p) found = true;
        if (!found) ps.push_back(p);
    }
    return ps;
}

std::string Coeff::str() const {
    if (den_ == Poly(Rational(1))) return num_.str();
    std::ostringstream os;
    bool wrap_num = num_.terms().size() > 1;
    bool wrap_den = den_.terms().size() > 1 || !den_.leading_monomial().is_unit() ||
                    den_.leading_coeff() != 1;
    os << (wrap_num ? "(" : "") << num_.str() << (wrap_num ? ")" : "");
    os << "/";
    os << (wrap_den ? "(" : "") << den_.str() << (wrap_den ? ")" : "");
    return os.str();
}

std::string Coeff::latex() const {
    auto poly_latex = [](const Poly& p) {
        std::string s = p.str();
        std::string out;
        for (size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '*') {
                out += ' ';
            } else if (s[i] == '^') {
                out += "^{";
                size_t j = i + 1;
                while (j < s.size() && (isdigit(s[j]) || s[j] == '-')) out += s[j++];
                out += '}';
                i = j - 1;
            } else {
                out += s[i];
            }
        }
        // Common parameter names get their TeX spelling.
        auto replace_all = [&out](const std::string& from, const std::string& to) {
            size_t pos = 0;
            while ((pos = out.find(from, pos)) != std::string::npos) {
                out.replace(pos, from.size(), to);
                pos += to.size();
            }
        };
        replace_all("lambda", "\\lambda");
        return out;
    };
    if (den_ == Poly(Rational(1))) return poly_latex(num_);
    return "\\frac{" + poly_latex(num_) + "}{" + poly_latex(den_) + "}";
}

}  // namespace lbmfd
