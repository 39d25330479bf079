#pragma once

#include <string>
#include <vector>

#include "lbmfd/matrix.hpp"
#include "lbmfd/moment_poly.hpp"
#include "lbmfd/operator_poly.hpp"

namespace lbmfd {

// Multiple-relaxation-times lattice Boltzmann scheme: velocities, moment
// basis, diagonal relaxation and equilibria. Moments are numbered with the
// conserved ones first; equilibria of conserved moments are the moments
// themselves.
struct LBMScheme {
    int d = 1;                              // spatial dimension, 1..3
    int q = 0;                              // velocity count
    int N = 1;                              // conserved moment count
    std::vector<SpaceExp> velocities;       // integer velocities c_j (times lambda)
    Coeff lattice_speed;                    // lambda, symbolic or rational
    RingMatrix<Coeff> moment_matrix;        // M, rows = moment basis
    std::vector<Coeff> rates;               // s_1..s_q
    std::vector<MomentPoly> equilibria;     // size q, first N equal to m_i

    // Product of the non-conserved relaxation rates.
    Coeff pi() const;
    bool linear_equilibria() const;
    // Copy with the conserved rates set to the canonical value 0.
    LBMScheme with_conserved_rates_zero() const;
    LBMScheme with_conserved_rates(const std::vector<Coeff>& conserved) const;
};

struct ValidationIssue {
    bool is_error = true;
    std::string component;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const {
        for (const auto& i : issues)
            if (i.is_error) return false;
        return true;
    }
    std::string str() const;
};

ValidationReport validate(const LBMScheme& s);
// Raises Validation if the scheme is invalid.
void require_valid(const LBMScheme& s);

// Moments-stream matrix M diag(x^{c_1}, ..., x^{c_q}) M^{-1}.
RingMatrix<LaurentPoly> stream_matrix(const LBMScheme& s);
// Same with every velocity reversed (used by the Maxwell iteration).
RingMatrix<LaurentPoly> conjugate_stream_matrix(const LBMScheme& s);

// The one-step update matrices on moments: A = T (I - S), B = T S.
struct SchemeMatrices {
    RingMatrix<LaurentPoly> A;
    RingMatrix<LaurentPoly> B;
};
SchemeMatrices scheme_matrices(const LBMScheme& s);

}  // namespace lbmfd
