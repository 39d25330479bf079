#pragma once

#include "lbmfd/macroderive.hpp"

namespace lbmfd {

// Maxwell iteration state: moment approximations m^(k) as Dx-graded jet
// polynomials, truncated at order k. The iteration starts from the
// quasi-equilibrium m^(0) = m_eq.
struct MaxwellState {
    int k = 0;
    std::vector<JetSeries> moments;  // size q
    // True when zero conserved rates were replaced by 1 to make S invertible.
    bool conserved_rates_defaulted = false;
};

// m^(k) = (sum_{r<=k} (-S^{-1} (zeta conj(T) - I))^r) m_eq. Requires every
// rate nonzero; zero conserved rates are defaulted to 1 (the canonical
// reduction prefers 0, the Maxwell route needs S invertible).
MaxwellState maxwell_iterate(const LBMScheme& s, int k);

// Macroscopic PDEs extracted from the conserved rows of the iteration,
// comparable with the other derivation routes via pde_equal.
PDESystem maxwell_pde(const LBMScheme& s, int order);

// Leading-order quasi-equilibrium of the non-conserved moments (N = 1):
// row i > N of the developed equation reduces to s1 Pi m_i = s1 Pi m_i_eq.
// Raises Validation when s1 = 0.
bool quasi_equilibrium_check(const LBMScheme& s);

}  // namespace lbmfd
