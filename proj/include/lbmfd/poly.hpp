#pragma once

#include <map>
#include <string>
#include <vector>

#include "lbmfd/param.hpp"
#include "lbmfd/rational.hpp"

namespace lbmfd {

// Power product of parameters, exponents >= 1, factors sorted by parameter id.
class Monomial {
public:
    using Factors = std::vector<std::pair<int, int>>;  // (param id, exponent)

    Monomial() = default;
    static Monomial unit() { return Monomial(); }
    static Monomial var(Param p, int exp = 1);

    const Factors& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    int total_degree() const;
    int degree_in(Param p) const;

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;        // this | o
    Monomial divide_into(const Monomial& o) const; // o / this, assumes divides

    // Graded lexicographic: total degree first, then exponent vector over the
    // global alphabet read in order of ascending parameter id.
    static int compare(const Monomial& a, const Monomial& b);
    friend bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    std::string str() const;

private:
    Factors factors_;
};

// Multivariate polynomial over Rational in the global parameter alphabet.
// Terms are kept in a map ordered by the monomial order; no zero
// coefficients are ever stored, so representation is canonical.
class Poly {
public:
    using Terms = std::map<Monomial, Rational>;

    Poly() = default;
    Poly(const Rational& c);  // NOLINT: implicit constant embedding is intended
    Poly(long c) : Poly(Rational(c)) {}
    static Poly var(Param p, int exp = 1);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_single_term() const { return terms_.size() == 1; }
    // Constant value; requires is_constant().
    Rational constant_value() const;

    int total_degree() const;
    int degree_in(Param p) const;
    // Lowest power of p dividing every term (p-adic valuation); 0 for the
    // zero polynomial by convention.
    int valuation_in(Param p) const;
    std::vector<Param> params() const;

    const Monomial& leading_monomial() const;
    const Rational& leading_coeff() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }
    Poly operator*(const Rational& c) const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    void add_term(const Monomial& m, const Rational& c);

    // Exact division; raises Internal if o does not divide this.
    Poly divide_exact(const Poly& o) const;
    // Division by p^k, assumes valuation_in(p) >= k.
    Poly shift_down(Param p, int k) const;
    Poly substitute_zero(Param p) const;
    Poly substitute(Param p, const Rational& value) const;
    Poly substitute(Param p, const Poly& value) const;
    // Evaluates with every parameter bound; raises Binding if one is missing.
    Rational evaluate(const std::map<Param, Rational>& bindings) const;

    // Content/primitive decomposition over the integers: *this ==
    // content * primitive, content a positive rational (negated if the
    // leading coefficient is negative), primitive an integer-coefficient
    // polynomial with content 1 and positive leading coefficient.
    std::pair<Rational, Poly> content_primitive() const;

    std::string str() const;

private:
    Terms terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

// GCD of the primitive parts, returned primitive with positive leading
// coefficient (1 for constants). Subresultant-free primitive PRS; fine at the
// sizes this library sees (a dozen parameters, small degrees).
Poly poly_gcd(const Poly& a, const Poly& b);

}  // namespace lbmfd
