#pragma once

// Test-only helpers: deterministic random generators for ring elements and
// independent oracles (Leibniz determinant, hand-rolled 2x2 formulas) kept
// deliberately separate from the implementations they check.

#include <random>
#include <vector>

#include "lbmfd/coeff.hpp"
#include "lbmfd/matrix.hpp"
#include "lbmfd/operator_poly.hpp"

namespace testutil {

using namespace lbmfd;

using Rng = std::mt19937;

inline Rational rand_rational(Rng& rng, int num_range = 6, int den_range = 4) {
    std::uniform_int_distribution<int> num(-num_range, num_range);
    std::uniform_int_distribution<int> den(1, den_range);
    return rat(num(rng), den(rng));
}

inline Rational rand_nonzero_rational(Rng& rng, int num_range = 6, int den_range = 4) {
    Rational r;
    do {
        r = rand_rational(rng, num_range, den_range);
    } while (lbmfd::is_zero(r));
    return r;
}

inline Poly rand_poly(Rng& rng, const std::vector<Param>& vars, int max_terms = 3,
                      int max_exp = 2) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> exp(0, max_exp);
    Poly p;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Monomial m;
        for (Param v : vars) m = m * Monomial::var(v, exp(rng));
        p.add_term(m, rand_rational(rng));
    }
    return p;
}

inline Coeff rand_coeff(Rng& rng, const std::vector<Param>& vars) {
    Poly num = rand_poly(rng, vars);
    Poly den;
    do {
        den = rand_poly(rng, vars, 2, 1);
    } while (den.is_zero());
    return Coeff(num, den);
}

inline LaurentPoly rand_laurent(Rng& rng, int d, int max_terms = 4, int shift_range = 2) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> shift(-shift_range, shift_range);
    LaurentPoly p;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        SpaceExp z{0, 0, 0};
        for (int k = 0; k < d; ++k) z[k] = shift(rng);
        p.add_term(z, Coeff(rand_rational(rng)));
    }
    return p;
}

inline OperatorPoly rand_operator(Rng& rng, int d, int max_terms = 4, int shift_range = 2,
                                  int max_time = 2) {
    std::uniform_int_distribution<int> nterms(0, max_terms);
    std::uniform_int_distribution<int> shift(-shift_range, shift_range);
    std::uniform_int_distribution<int> td(0, max_time);
    OperatorPoly p;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        SpaceExp z{0, 0, 0};
        for (int k = 0; k < d; ++k) z[k] = shift(rng);
        p.add_term(OpKey{td(rng), z}, Coeff(rand_rational(rng)));
    }
    return p;
}

// Independent determinant oracle: the Leibniz permutation sum. Exponential,
// reserved for q <= 5.
template <class R>
R leibniz_det(const RingMatrix<R>& m) {
    int q = m.size();
    std::vector<int> perm(static_cast<size_t>(q));
    for (int i = 0; i < q; ++i) perm[static_cast<size_t>(i)] = i;
    R acc = RingOps<R>::zero();
    // Iterate permutations in lexicographic order, tracking parity by
    // counting inversions from scratch (q is tiny).
    auto parity = [&](const std::vector<int>& p) {
        int inv = 0;
        for (size_t a = 0; a < p.size(); ++a)
            for (size_t b = a + 1; b < p.size(); ++b)
                if (p[a] > p[b]) ++inv;
        return inv % 2;
    };
    do {
        R term = RingOps<R>::one();
        for (int i = 0; i < q; ++i) term = term * m.at(i, perm[static_cast<size_t>(i)]);
        acc = parity(perm) == 0 ? acc + term : acc - term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

// Cofactor-expansion adjugate done the pedestrian way (first-row Laplace
// determinants, no memoization), independent of lbmfd::adjugate internals.
template <class R>
RingMatrix<R> laplace_adjugate(const RingMatrix<R>& m) {
    int q = m.size();
    RingMatrix<R> adj(q);
    if (q == 1) {
        adj.at(0, 0) = RingOps<R>::one();
        return adj;
    }
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            RingMatrix<R> minor(q - 1);
            for (int r = 0, rr = 0; r < q; ++r) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < q; ++c) {
                    if (c == j) continue;
                    minor.at(rr, cc) = m.at(r, c);
                    ++cc;
                }
                ++rr;
            }
            R d = leibniz_det(minor);
            adj.at(j, i) = ((i + j) % 2 == 0) ? d : (RingOps<R>::zero() - d);
        }
    return adj;
}

}  // namespace testutil
