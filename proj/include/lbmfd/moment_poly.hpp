#pragma once

#include <map>
#include <vector>

#include "lbmfd/coeff.hpp"

namespace lbmfd {

// Polynomial in the conserved-moment symbols m_1..m_N with Coeff
// coefficients; the representation of equilibria. Exponent vectors are
// indexed by conserved moment (0-based), trailing zeros trimmed so the same
// value compares equal regardless of how many moments are in scope.
class MomentPoly {
public:
    using Exps = std::vector<int>;
    using Terms = std::map<Exps, Coeff>;

    MomentPoly() = default;
    MomentPoly(const Coeff& c) { add_term({}, c); }  // NOLINT
    static MomentPoly moment(int idx) {              // m_{idx+1}
        MomentPoly p;
        Exps e(static_cast<size_t>(idx) + 1, 0);
        e[static_cast<size_t>(idx)] = 1;
        p.add_term(e, Coeff(1));
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_coeff() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
    Coeff coeff_value() const;
    // Largest moment index referenced (0-based), or -1.
    int max_moment() const;
    int total_degree() const;
    bool is_linear() const { return total_degree() <= 1; }

    void add_term(Exps e, const Coeff& c);

    MomentPoly operator-() const;
    MomentPoly operator+(const MomentPoly& o) const;
    MomentPoly operator-(const MomentPoly& o) const;
    MomentPoly operator*(const MomentPoly& o) const;
    MomentPoly operator*(const Coeff& c) const;
    MomentPoly& operator+=(const MomentPoly& o) { *this = *this + o; return *this; }

    friend bool operator==(const MomentPoly& a, const MomentPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MomentPoly& a, const MomentPoly& b) { return !(a == b); }

    // Partial derivative with respect to m_{idx+1}.
    MomentPoly derivative(int idx) const;

    template <class T>
    T evaluate(const std::vector<T>& m_values) const;

    std::string str() const;

private:
    Terms terms_;
};

}  // namespace lbmfd
