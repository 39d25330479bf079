#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "lbmfd/diffop.hpp"
#include "lbmfd/moment_poly.hpp"

namespace lbmfd {

// dt^a d^nu m_i treated as an independent polynomial indeterminate; the
// canonical variable order is lexicographic in (moment, time order, space
// multi-index).
struct JetVar {
    int moment = 0;  // 0-based conserved index
    int dt = 0;
    std::array<int, 3> dx{0, 0, 0};

    friend bool operator<(const JetVar& a, const JetVar& b) {
        if (a.moment != b.moment) return a.moment < b.moment;
        if (a.dt != b.dt) return a.dt < b.dt;
        return a.dx < b.dx;
    }
    friend bool operator==(const JetVar& a, const JetVar& b) {
        return a.moment == b.moment && a.dt == b.dt && a.dx == b.dx;
    }
    std::string str() const;
    std::string latex() const;
};

// Power product of jet variables, factors sorted, exponents >= 1.
struct JetMono {
    std::vector<std::pair<JetVar, int>> factors;

    static JetMono unit() { return {}; }
    static JetMono var(const JetVar& v, int e = 1);
    JetMono operator*(const JetMono& o) const;
    int total_degree() const;
    friend bool operator<(const JetMono& a, const JetMono& b);
    friend bool operator==(const JetMono& a, const JetMono& b) { return a.factors == b.factors; }
};

// Polynomial in jet variables over Coeff: the canonical representation of
// (possibly nonlinear) differential expressions in the conserved moments.
class JetPoly {
public:
    using Terms = std::map<JetMono, Coeff>;

    JetPoly() = default;
    JetPoly(const Coeff& c) { add_term(JetMono::unit(), c); }  // NOLINT
    static JetPoly var(const JetVar& v) {
        JetPoly p;
        p.add_term(JetMono::var(v), Coeff(1));
        return p;
    }
    static JetPoly moment(int idx) { return var(JetVar{idx, 0, {0, 0, 0}}); }
    // Embeds an equilibrium polynomial: m_l -> jet (l, 0, 0).
    static JetPoly from_moment_poly(const MomentPoly& p);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    static JetPoly zero() { return JetPoly(); }
    static JetPoly one() { return JetPoly(Coeff(1)); }

    void add_term(const JetMono& m, const Coeff& c);

    JetPoly operator-() const;
    JetPoly operator+(const JetPoly& o) const;
    JetPoly operator-(const JetPoly& o) const;
    JetPoly operator*(const JetPoly& o) const;
    JetPoly operator*(const Coeff& c) const;
    JetPoly& operator+=(const JetPoly& o) { *this = *this + o; return *this; }
    JetPoly& operator-=(const JetPoly& o) { *this = *this - o; return *this; }

    friend bool operator==(const JetPoly& a, const JetPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const JetPoly& a, const JetPoly& b) { return !(a == b); }

    // Formal derivatives (Leibniz rule, jet promotion).
    JetPoly d_dt() const;
    JetPoly d_dx(int axis) const;
    // Applies a polynomial differential operator term by term.
    JetPoly apply(const DiffOp& op) const;

    // Replaces every occurrence of v (any power) by the given polynomial.
    JetPoly substitute(const JetVar& v, const JetPoly& value) const;
    // Coefficient of the plain monomial {v^1}.
    Coeff coeff_of_var(const JetVar& v) const;

    int max_dt() const;
    bool has_dt_jets() const { return max_dt() > 0; }

    template <class Fn>
    JetPoly map_coeffs(Fn&& fn) const {
        JetPoly r;
        for (const auto& [m, c] : terms_) r.add_term(m, fn(c));
        return r;
    }

    std::string str() const;
    std::string latex() const;

private:
    Terms terms_;
};

inline JetPoly operator*(const Coeff& c, const JetPoly& p) { return p * c; }

// Dx-graded list of jet polynomials: coefficient r belongs to Dx^r.
using JetSeries = std::vector<JetPoly>;

}  // namespace lbmfd
