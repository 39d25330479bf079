#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lbmfd/scheme.hpp"

namespace lbmfd {

// Multi-step explicit finite-difference scheme on one conserved moment,
// written as an operator identity
//     lhs m_i = sum_j rhs_conserved[j] m_j + sum_{j>N} rhs_equilibrium[j] m_j^eq
// with lhs monic in the time shift z of degree `steps`. Applying the identity
// at base time t and reading the z^steps term as the new level makes the
// newest level t + dt. Degenerate time levels (all-zero slices, e.g. when
// some rate equals 1) are already pruned.
struct FDScheme {
    int conserved_index = 0;  // 0-based
    int N = 1;
    int steps = 0;  // time levels of history consumed = z-degree of lhs
    OperatorPoly lhs;
    std::map<int, OperatorPoly> rhs_conserved;    // key: conserved j != i (0-based)
    std::map<int, OperatorPoly> rhs_equilibrium;  // key: j >= N (0-based)

    friend bool operator==(const FDScheme& a, const FDScheme& b) {
        return a.conserved_index == b.conserved_index && a.N == b.N && a.steps == b.steps &&
               a.lhs == b.lhs && a.rhs_conserved == b.rhs_conserved &&
               a.rhs_equilibrium == b.rhs_equilibrium;
    }
    friend bool operator!=(const FDScheme& a, const FDScheme& b) { return !(a == b); }

    std::string str() const;
};

// Reduction of a scheme with N = 1 (conserved rates canonicalized to zero).
FDScheme reduce_single(const LBMScheme& s);

// One FD scheme per conserved moment, 1 <= N <= q-1.
std::vector<FDScheme> reduce_multi(const LBMScheme& s);

// Reduction that keeps the scheme's own conserved rates (the canonical
// entry points above force them to zero first).
FDScheme reduce_with_rates(const LBMScheme& s, int conserved_index);

struct InvarianceResult {
    bool equal = false;
    std::string diff;  // empty when equal
};

// Rebuilds the FD schemes with the trial conserved rates and compares them
// term by term against the canonical ones.
InvarianceResult invariance_check(const LBMScheme& s, const std::vector<Coeff>& trial_conserved);

// ---------------------------------------------------------------------------
// Numeric specialization

struct StencilTerm {
    int time = 0;  // z-degree within the scheme (0..steps)
    SpaceExp z{0, 0, 0};
    Rational w;
};

// FD scheme with every parameter bound; directly executable.
struct NumericStencil {
    int conserved_index = 0;
    int N = 1;
    int steps = 0;
    std::vector<StencilTerm> lhs_lower;                     // z-degree < steps, moved to the rhs
    std::map<int, std::vector<StencilTerm>> conserved;      // j -> terms on m_j
    std::map<int, std::vector<StencilTerm>> equilibrium;    // j -> terms on m_j^eq
    std::vector<MomentPoly> equilibria;                     // numeric-coefficient equilibria (size q)
};

NumericStencil specialize_stencil(const FDScheme& f, const LBMScheme& s,
                                  const std::map<Param, Rational>& bindings);

}  // namespace lbmfd
