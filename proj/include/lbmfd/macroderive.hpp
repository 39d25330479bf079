#pragma once

#include <string>
#include <vector>

#include "lbmfd/jet.hpp"
#include "lbmfd/scheme.hpp"
#include "lbmfd/series.hpp"

namespace lbmfd {

// Macroscopic PDE system at order 1 or 2:
//   dt m_i + spatial[i][0] + Dx spatial[i][1] + ... = O(Dx^order)
// with every spatial[i][r] free of time-derivative jets.
struct PDESystem {
    int order = 1;
    int N = 1;
    std::vector<std::vector<JetPoly>> spatial;  // [conserved i][r], r < order

    std::string str() const;
    std::string latex(int i) const;  // one equation
};

// First-order flux term of the macroscopic system: the divergence of the
// conserved and equilibrium fluxes through the momentum-velocity matrix.
JetPoly flux_gradient(const LBMScheme& s, int i);

PDESystem derive_order1(const LBMScheme& s);

// Closed-form second-order system (Henon factors 1/s_j - 1/2).
PDESystem derive_order2_closed(const LBMScheme& s);

// Series route through the corresponding FD scheme: determinant/adjugate of
// the truncated resolvent, applied to jets, time derivatives eliminated,
// divided by the leading constant. `symbolic_limit` keeps the conserved rates
// symbolic and takes the limit rate -> 0 instead of substituting zero.
PDESystem derive_via_series(const LBMScheme& s, int order, bool symbolic_limit = false);

// Replaces every time-derivative jet using dt m_l = -Gamma_l differentiated
// as needed; gammas[l] must be spatial-only.
JetPoly eliminate_time_derivatives(const JetPoly& p, const std::vector<JetPoly>& gammas);

struct PdeDiff {
    bool equal = false;
    std::string diff;
};
PdeDiff pde_equal(const PDESystem& a, const PDESystem& b);

}  // namespace lbmfd
