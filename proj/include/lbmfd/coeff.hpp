#pragma once

#include <map>
#include <string>

#include "lbmfd/poly.hpp"

namespace lbmfd {

// Element of the coefficient field: a fraction of multivariate polynomials
// over the exact rationals. Values are kept in the canonical form
//   num/den with integer-coefficient polynomials, gcd(num, den) = 1,
//   coprime integer contents, and positive leading coefficient of den,
// so structural equality coincides with mathematical equality.
class Coeff {
public:
    Coeff() : num_(), den_(Rational(1)) {}
    Coeff(const Rational& r) : num_(r), den_(Rational(1)) { normalize(); }  // NOLINT
    Coeff(long v) : num_(Rational(v)), den_(Rational(1)) {}                 // NOLINT
    Coeff(const Poly& p) : num_(p), den_(Rational(1)) { normalize(); }  // NOLINT
    Coeff(Poly num, Poly den);

    static Coeff param(Param p) { return Coeff(Poly::var(p)); }
    static Coeff param(const std::string& name) { return param(Param(name)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    // Exact rational value of a parameter-free coefficient.
    Rational rational_value() const;

    Coeff operator-() const;
    Coeff operator+(const Coeff& o) const;
    Coeff operator-(const Coeff& o) const;
    Coeff operator*(const Coeff& o) const;
    Coeff operator/(const Coeff& o) const;  // raises MalformedCoefficient on zero divisor
    Coeff& operator+=(const Coeff& o) { *this = *this + o; return *this; }
    Coeff& operator-=(const Coeff& o) { *this = *this - o; return *this; }
    Coeff& operator*=(const Coeff& o) { *this = *this * o; return *this; }
    Coeff& operator/=(const Coeff& o) { *this = *this / o; return *this; }
    Coeff inverse() const;
    Coeff pow(long e) const;

    // Canonical forms make == a structural comparison.
    friend bool operator==(const Coeff& a, const Coeff& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Coeff& a, const Coeff& b) { return !(a == b); }
    friend bool operator<(const Coeff& a, const Coeff& b);  // arbitrary total order for maps

    // Cross-multiplication equality, independent of normalization. Used by
    // tests as the oracle the canonical form must agree with.
    static bool equal_cross(const Coeff& a, const Coeff& b);

    // Value at p = 0, raising Pole if the limit does not exist.
    Coeff limit_at_zero(Param p) const;
    Coeff substitute(Param p, const Rational& value) const;
    Coeff substitute(Param p, const Coeff& value) const;
    Rational evaluate(const std::map<Param, Rational>& bindings) const;
    std::vector<Param> params() const;

    std::string str() const;
    std::string latex() const;

private:
    void normalize();

    Poly num_, den_;
};

inline Coeff operator*(const Rational& r, const Coeff& c) { return Coeff(r) * c; }

}  // namespace lbmfd
