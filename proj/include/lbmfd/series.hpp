#pragma once

#include <limits>
#include <vector>

#include "lbmfd/diffop.hpp"
#include "lbmfd/matrix.hpp"
#include "lbmfd/scheme.hpp"

namespace lbmfd {

// Truncated formal power series in the space step with DiffOp coefficients.
// Each value tracks the order it is reliable to: arithmetic propagates the
// minimum, so a product of series known to orders R1 and R2 is reported to
// min(R1, R2). Exact values (constants) carry an unbounded order.
class Series {
public:
    static constexpr int kExact = std::numeric_limits<int>::max() / 2;

    Series() : known_(kExact) {}
    explicit Series(int known) : known_(known) {}
    static Series zero() { return Series(); }
    static Series one() { return constant(DiffOp::one()); }
    static Series constant(const DiffOp& d) {
        Series s;
        if (!d.is_zero()) s.c_.push_back(d);
        return s;
    }
    static Series constant(const Coeff& c) { return constant(DiffOp::constant(c)); }

    int known_order() const { return known_; }
    bool is_exact() const { return known_ == kExact; }

    // Coefficient of Dx^r; requires r within the reliable range.
    DiffOp coeff(int r) const {
        if (r > known_) raise(ErrorKind::Internal, "series coefficient beyond reliable order");
        if (r < 0 || r >= static_cast<int>(c_.size())) return DiffOp();
        return c_[static_cast<size_t>(r)];
    }
    void set_coeff(int r, const DiffOp& d) {
        if (r > known_) raise(ErrorKind::Internal, "setting coefficient beyond reliable order");
        if (r >= static_cast<int>(c_.size())) c_.resize(static_cast<size_t>(r) + 1);
        c_[static_cast<size_t>(r)] = d;
        trim();
    }

    // All reliable coefficients vanish.
    bool is_zero() const {
        for (const auto& d : c_)
            if (!d.is_zero()) return false;
        return true;
    }

    // First index with a nonzero coefficient; known_order() + 1 when the
    // series vanishes through its reliable range.
    int order() const {
        for (size_t r = 0; r < c_.size(); ++r)
            if (!c_[r].is_zero()) return static_cast<int>(r);
        return known_ == kExact ? kExact : known_ + 1;
    }

    Series truncated(int r) const {
        Series s(std::min(known_, r));
        s.c_ = c_;
        if (static_cast<int>(s.c_.size()) > r + 1) s.c_.resize(static_cast<size_t>(r) + 1);
        s.trim();
        return s;
    }

    Series operator-() const {
        Series s(known_);
        for (const auto& d : c_) s.c_.push_back(-d);
        return s;
    }
    Series operator+(const Series& o) const {
        Series s(std::min(known_, o.known_));
        size_t n = std::max(c_.size(), o.c_.size());
        for (size_t r = 0; r < n; ++r) {
            DiffOp d;
            if (r < c_.size()) d += c_[r];
            if (r < o.c_.size()) d += o.c_[r];
            s.c_.push_back(d);
        }
        s.clip();
        return s;
    }
    Series operator-(const Series& o) const { return *this + (-o); }
    Series operator*(const Series& o) const {
        Series s(std::min(known_, o.known_));
        if (c_.empty() || o.c_.empty()) return s;
        int top = std::min<long>(s.known_, static_cast<long>(c_.size() + o.c_.size()) - 2);
        s.c_.assign(static_cast<size_t>(top) + 1, DiffOp());
        for (size_t a = 0; a < c_.size(); ++a) {
            if (c_[a].is_zero()) continue;
            for (size_t b = 0; b < o.c_.size(); ++b) {
                if (static_cast<int>(a + b) > top) break;
                if (o.c_[b].is_zero()) continue;
                s.c_[a + b] += c_[a] * o.c_[b];
            }
        }
        s.trim();
        return s;
    }
    Series& operator+=(const Series& o) { *this = *this + o; return *this; }
    Series& operator-=(const Series& o) { *this = *this - o; return *this; }

    Series operator*(const Coeff& c) const {
        Series s(known_);
        for (const auto& d : c_) s.c_.push_back(d * c);
        s.trim();
        return s;
    }
    Series operator*(const DiffOp& d) const { return *this * constant(d); }

    // Multiplication and exact division by powers of Dx.
    Series shifted_up(int k) const {
        Series s(known_ == kExact ? kExact : known_ + k);
        s.c_.assign(static_cast<size_t>(k), DiffOp());
        for (const auto& d : c_) s.c_.push_back(d);
        return s;
    }
    Series shifted_down(int k) const {
        for (int r = 0; r < k; ++r)
            if (!coeff(r).is_zero())
                raise(ErrorKind::Internal, "series division by Dx^k with nonzero low coefficient");
        Series s(known_ == kExact ? kExact : known_ - k);
        for (size_t r = static_cast<size_t>(k); r < c_.size(); ++r) s.c_.push_back(c_[r]);
        return s;
    }

    friend bool operator==(const Series& a, const Series& b) {
        if (a.known_ != b.known_) return false;
        size_t n = std::max(a.c_.size(), b.c_.size());
        for (size_t r = 0; r < n; ++r) {
            DiffOp da = r < a.c_.size() ? a.c_[r] : DiffOp();
            DiffOp db = r < b.c_.size() ? b.c_[r] : DiffOp();
            if (da != db) return false;
        }
        return true;
    }
    friend bool operator!=(const Series& a, const Series& b) { return !(a == b); }

    // Coefficient-wise comparison through order r (ignoring reliability tags).
    static bool equal_to_order(const Series& a, const Series& b, int r) {
        for (int k = 0; k <= r; ++k)
            if (a.coeff(k) != b.coeff(k)) return false;
        return true;
    }

    template <class Fn>
    Series map_coeffs(Fn&& fn) const {  // applied to every Coeff inside
        Series s(known_);
        for (const auto& d : c_) s.c_.push_back(d.map_coeffs(fn));
        s.trim();
        return s;
    }

    std::string str() const;

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    void clip() {
        if (known_ != kExact && static_cast<int>(c_.size()) > known_ + 1)
            c_.resize(static_cast<size_t>(known_) + 1);
        trim();
    }

    int known_;
    std::vector<DiffOp> c_;
};

template <>
struct RingOps<Series> {
    static Series zero() { return Series::zero(); }
    static Series one() { return Series::one(); }
    static bool is_zero(const Series& s) { return s.is_zero(); }
    static Series div_int(const Series& s, long k) { return s * Coeff(rat(1, k)); }
};

using SeriesMatrix = RingMatrix<Series>;

// ---------------------------------------------------------------------------
// Expansions

// Space shift x^z as a series of space derivatives (Taylor expansion):
// coefficient at order r is sum_{|nu| = r} (-1)^r z^nu / nu! d^nu.
Series expand_shift(const SpaceExp& z, int order);

// Time shift under acoustic scaling: coefficient at order r is dt^r/(lambda^r r!).
Series expand_time_shift(const Coeff& lattice_speed, int order);

// Expansion of a full discrete operator (time shifts composed with space
// shifts, extended linearly).
Series expand_operator(const OperatorPoly& op, const Coeff& lattice_speed, int order);

// Momentum-velocity operator matrix M diag(e_j . grad) M^{-1} with
// e_j = lambda c_j; entries are first-order space operators.
RingMatrix<DiffOp> moment_gradient_matrix(const LBMScheme& s);

// Stream-matrix series from powers of the gradient matrix:
// coefficient r = (-sign)^r / (lambda^r r!) G^r. sign=+1 gives the stream
// matrix, sign=-1 its conjugate (reversed velocities).
SeriesMatrix stream_series(const RingMatrix<DiffOp>& g, const Coeff& lattice_speed, int order,
                           int sign = 1);

// Direct route: M diag(expand_shift(c_j)) M^{-1}, no gradient powers.
SeriesMatrix stream_series_direct(const LBMScheme& s, int order, int sign = 1);

// zeta I - A with A = T (I - S): coefficient r is
// (1/(lambda^r r!)) (dt^r I - (-1)^r G^r (I - S)).
SeriesMatrix resolvent_series(const RingMatrix<DiffOp>& g, const std::vector<Coeff>& rates,
                              const Coeff& lattice_speed, int order);
SeriesMatrix resolvent_series(const LBMScheme& s, int order);

// Same for the cut matrix A_i of the multi-conserved reduction.
SeriesMatrix resolvent_series_cut(const LBMScheme& s, int conserved_index, int order);

// zeta conj(T) - I, the building block of the Maxwell iteration.
SeriesMatrix conj_stream_shift_series(const RingMatrix<DiffOp>& g, const Coeff& lattice_speed,
                                      int order);

// Determinant and adjugate computed directly in the truncated series ring.
struct SeriesDetAdj {
    Series det;
    SeriesMatrix adj;
};
SeriesDetAdj series_det_adj(const SeriesMatrix& m);

// Coefficient-wise limits and substitutions.
Series series_limit_at_zero(const Series& s, Param p);
SeriesMatrix series_limit_at_zero(const SeriesMatrix& m, Param p);

// ---------------------------------------------------------------------------
// Closed-form first and second directional derivatives of det and adj around
// an invertible C (Jacobi formula and its adjugate counterpart). The caller
// supplies C^{-1} and det(C); this is the independent derivation path used to
// cross-check the direct series computation.
template <class R>
struct DetAdjDerivatives {
    R det_d;             // D_C det [D]
    R det_dd;            // D^2_C det [D, E]
    RingMatrix<R> adj_d;   // D_C adj [D]
    RingMatrix<R> adj_dd;  // D^2_C adj [D, E]
};

template <class R>
DetAdjDerivatives<R> det_adj_derivatives(const RingMatrix<R>& cinv, const R& det_c,
                                         const RingMatrix<R>& d, const RingMatrix<R>& e) {
    DetAdjDerivatives<R> out{RingOps<R>::zero(), RingOps<R>::zero(), {}, {}};
    const int q = cinv.size();
    RingMatrix<R> cd = cinv * d;
    RingMatrix<R> ce = cinv * e;
    R tr_cd = cd.trace();
    R tr_ce = ce.trace();
    R tr_cecd = (ce * cd).trace();

    out.det_d = det_c * tr_cd;
    out.det_dd = det_c * (tr_ce * tr_cd - tr_cecd);

    RingMatrix<R> idq = RingMatrix<R>::identity(q);
    out.adj_d = (idq.scaled(tr_cd) - cd).scaled(det_c) * cinv;
    RingMatrix<R> part1 = cinv.scaled(out.det_dd);
    RingMatrix<R> inner = e * cd + d * ce - d.scaled(tr_ce) - e.scaled(tr_cd);
    RingMatrix<R> part2 = (cinv * inner * cinv).scaled(det_c);
    out.adj_dd = part1 + part2;
    return out;
}

// Convenience for matrices over the coefficient field: inverts C exactly.
DetAdjDerivatives<Coeff> det_adj_derivatives_field(const RingMatrix<Coeff>& c,
                                                   const RingMatrix<Coeff>& d,
                                                   const RingMatrix<Coeff>& e);

}  // namespace lbmfd
