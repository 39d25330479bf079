#pragma once

// Shared scheme builders for unit and acceptance tests.

#include "lbmfd/scheme.hpp"
#include "oracles.hpp"

namespace testutil {

using namespace lbmfd;

// Two velocities +-1 on a 1-D lattice, m1 conserved, m2_eq = C m1.
// M = [[1, 1], [lambda, -lambda]].
inline LBMScheme d1q2(const Coeff& lambda, const Coeff& s2, const MomentPoly& eq2) {
    LBMScheme s;
    s.d = 1;
    s.q = 2;
    s.N = 1;
    s.velocities = {space_exp(1), space_exp(-1)};
    s.lattice_speed = lambda;
    s.moment_matrix = RingMatrix<Coeff>(2);
    s.moment_matrix.at(0, 0) = Coeff(1);
    s.moment_matrix.at(0, 1) = Coeff(1);
    s.moment_matrix.at(1, 0) = lambda;
    s.moment_matrix.at(1, 1) = -lambda;
    s.rates = {Coeff(0), s2};
    s.equilibria = {MomentPoly::moment(0), eq2};
    return s;
}

inline LBMScheme d1q2(const Coeff& lambda, const Coeff& s2, const Coeff& advection) {
    return d1q2(lambda, s2, MomentPoly::moment(0) * advection);
}

// Three velocities {0, +1, -1}, M rows (1,1,1), (0,lambda,-lambda),
// (0,lambda^2,lambda^2); either one or two conserved moments.
inline LBMScheme d1q3(const Coeff& lambda, int N, const std::vector<Coeff>& rates,
                      const std::vector<MomentPoly>& eq_tail) {
    LBMScheme s;
    s.d = 1;
    s.q = 3;
    s.N = N;
    s.velocities = {space_exp(0), space_exp(1), space_exp(-1)};
    s.lattice_speed = lambda;
    s.moment_matrix = RingMatrix<Coeff>(3);
    s.moment_matrix.at(0, 0) = Coeff(1);
    s.moment_matrix.at(0, 1) = Coeff(1);
    s.moment_matrix.at(0, 2) = Coeff(1);
    s.moment_matrix.at(1, 1) = lambda;
    s.moment_matrix.at(1, 2) = -lambda;
    s.moment_matrix.at(2, 1) = lambda * lambda;
    s.moment_matrix.at(2, 2) = lambda * lambda;
    s.rates = rates;
    for (int i = 0; i < N; ++i) s.equilibria.push_back(MomentPoly::moment(i));
    for (const auto& e : eq_tail) s.equilibria.push_back(e);
    return s;
}

// Random valid scheme for the cross-check batteries: d = 1, q in {2, 3},
// N in {1, 2} (N < q), random invertible rational moment matrix, rational
// non-conserved rates away from 0, and linear or quadratic equilibria.
inline LBMScheme random_scheme(Rng& rng, int q, int N, bool quadratic, bool symbolic_rates = false,
                               int velocity_span = 1) {
    LBMScheme s;
    s.d = 1;
    s.q = q;
    s.N = N;
    std::uniform_int_distribution<int> vel(-velocity_span, velocity_span);
    s.velocities.clear();
    for (int j = 0; j < q; ++j) s.velocities.push_back(space_exp(vel(rng)));
    s.lattice_speed = Coeff(1);
    while (true) {
        RingMatrix<Coeff> m(q);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) m.at(i, j) = Coeff(rand_rational(rng, 3, 2));
        if (!det(m).is_zero()) {
            s.moment_matrix = m;
            break;
        }
    }
    static int counter = 0;
    for (int i = 0; i < q; ++i) {
        if (i < N) {
            s.rates.push_back(Coeff(0));
        } else if (symbolic_rates) {
            s.rates.push_back(Coeff::param("sr" + std::to_string(++counter)));
        } else {
            std::uniform_int_distribution<int> num(1, 8);
            s.rates.push_back(Coeff(rat(num(rng), 4)));  // in (0, 2]
        }
    }
    for (int i = 0; i < N; ++i) s.equilibria.push_back(MomentPoly::moment(i));
    std::uniform_int_distribution<int> pick(0, N - 1);
    for (int j = N; j < q; ++j) {
        MomentPoly e;
        for (int l = 0; l < N; ++l)
            e += MomentPoly::moment(l) * Coeff(rand_rational(rng, 2, 2));
        if (quadratic) {
            int l = pick(rng);
            e += MomentPoly::moment(l) * MomentPoly::moment(pick(rng)) *
                 Coeff(rand_rational(rng, 1, 2));
        }
        s.equilibria.push_back(e);
    }
    return s;
}

}  // namespace testutil
