#pragma once

#include <set>
#include <vector>

#include "lbmfd/coeff.hpp"
#include "lbmfd/error.hpp"
#include "lbmfd/operator_poly.hpp"

namespace lbmfd {

// Ring adaptor. The default delegates to members; arithmetic comes from the
// element type's operators. div_int must be exact (every ring here is a
// Q-algebra).
template <class R>
struct RingOps {
    static R zero() { return R(); }
    static R one() { return R::one(); }
    static bool is_zero(const R& r) { return r.is_zero(); }
    static R div_int(const R& r, long k) { return r * Coeff(rat(1, k)); }
};

template <>
struct RingOps<Coeff> {
    static Coeff zero() { return Coeff(); }
    static Coeff one() { return Coeff(1); }
    static bool is_zero(const Coeff& c) { return c.is_zero(); }
    static Coeff div_int(const Coeff& c, long k) { return c * Coeff(rat(1, k)); }
};

template <>
struct RingOps<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& c) { return lbmfd::is_zero(c); }
    static Rational div_int(const Rational& c, long k) { return c / Rational(k); }
};

// Square matrix over a commutative ring. Everything is by value; results are
// deterministic functions of the inputs.
template <class R>
class RingMatrix {
public:
    RingMatrix() : q_(0) {}
    explicit RingMatrix(int q) : q_(q), e_(static_cast<size_t>(q) * q, RingOps<R>::zero()) {}

    static RingMatrix identity(int q) {
        RingMatrix m(q);
        for (int i = 0; i < q; ++i) m.at(i, i) = RingOps<R>::one();
        return m;
    }
    static RingMatrix diagonal(const std::vector<R>& d) {
        RingMatrix m(static_cast<int>(d.size()));
        for (int i = 0; i < m.q_; ++i) m.at(i, i) = d[static_cast<size_t>(i)];
        return m;
    }

    int size() const { return q_; }
    R& at(int i, int j) { return e_[static_cast<size_t>(i) * q_ + j]; }
    const R& at(int i, int j) const { return e_[static_cast<size_t>(i) * q_ + j]; }

    RingMatrix operator+(const RingMatrix& o) const {
        check_same(o);
        RingMatrix r(q_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
        return r;
    }
    RingMatrix operator-(const RingMatrix& o) const {
        check_same(o);
        RingMatrix r(q_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
        return r;
    }
    RingMatrix operator*(const RingMatrix& o) const {
        check_same(o);
        RingMatrix r(q_);
        for (int i = 0; i < q_; ++i)
            for (int k = 0; k < q_; ++k) {
                if (RingOps<R>::is_zero(at(i, k))) continue;
                for (int j = 0; j < q_; ++j) {
                    if (RingOps<R>::is_zero(o.at(k, j))) continue;
                    r.at(i, j) = r.at(i, j) + at(i, k) * o.at(k, j);
                }
            }
        return r;
    }
    RingMatrix scaled(const R& c) const {
        RingMatrix r(q_);
        for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] * c;
        return r;
    }
    friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
        return a.q_ == b.q_ && a.e_ == b.e_;
    }
    friend bool operator!=(const RingMatrix& a, const RingMatrix& b) { return !(a == b); }

    bool is_zero() const {
        for (const R& x : e_)
            if (!RingOps<R>::is_zero(x)) return false;
        return true;
    }

    R trace() const {
        R t = RingOps<R>::zero();
        for (int i = 0; i < q_; ++i) t = t + at(i, i);
        return t;
    }

    // Entries with row and column indices outside `keep` set to zero.
    RingMatrix cut(const std::set<int>& keep) const {
        RingMatrix r(q_);
        for (int i : keep)
            for (int j : keep) r.at(i, j) = at(i, j);
        return r;
    }

    template <class Fn>
    auto map(Fn&& fn) const {
        using S = decltype(fn(std::declval<const R&>()));
        RingMatrix<S> r(q_);
        for (int i = 0; i < q_; ++i)
            for (int j = 0; j < q_; ++j) r.at(i, j) = fn(at(i, j));
        return r;
    }

private:
    void check_same(const RingMatrix& o) const {
        if (q_ != o.q_) raise(ErrorKind::Internal, "matrix size mismatch");
    }

    int q_;
    std::vector<R> e_;
};

// Determinant by expansion along the first kept row, memoized over column
// subsets; O(2^q) ring operations, fine for the q <= 9 this library targets.
template <class R>
R det(const RingMatrix<R>& m) {
    int q = m.size();
    if (q == 0) return RingOps<R>::one();
    if (q > 20) raise(ErrorKind::Internal, "determinant size out of range");
    std::vector<std::vector<R>> memo(static_cast<size_t>(q) + 1);
    // det of the submatrix with rows r..q-1 and the columns in `cols`.
    // Key: (r, bitmask); popcount(mask) == q - r.
    std::vector<std::vector<char>> have(static_cast<size_t>(q) + 1);
    for (int r = 0; r <= q; ++r) {
        memo[static_cast<size_t>(r)].assign(1u << q, RingOps<R>::zero());
        have[static_cast<size_t>(r)].assign(1u << q, 0);
    }
    struct Rec {
        const RingMatrix<R>& m;
        int q;
        std::vector<std::vector<R>>& memo;
        std::vector<std::vector<char>>& have;
        R operator()(int r, unsigned mask) {
            if (r == q) return RingOps<R>::one();
            if (have[static_cast<size_t>(r)][mask]) return memo[static_cast<size_t>(r)][mask];
            R acc = RingOps<R>::zero();
            int sign = 1, pos = 0;
            for (int j = 0; j < q; ++j) {
                if (!(mask & (1u << j))) continue;
                if (!RingOps<R>::is_zero(m.at(r, j))) {
                    R sub = (*this)(r + 1, mask & ~(1u << j));
                    R term = m.at(r, j) * sub;
                    acc = (sign > 0) ? acc + term : acc - term;
                }
                sign = -sign;
                ++pos;
            }
            have[static_cast<size_t>(r)][mask] = 1;
            memo[static_cast<size_t>(r)][mask] = acc;
            return acc;
        }
    } rec{m, q, memo, have};
    return rec(0, (1u << q) - 1u);
}

// Transpose of the cofactor matrix, each minor by the memoized expansion.
template <class R>
RingMatrix<R> adjugate(const RingMatrix<R>& m) {
    int q = m.size();
    RingMatrix<R> adj(q);
    if (q == 0) return adj;
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
            R d = det(minor);
            adj.at(j, i) = ((i + j) % 2 == 0) ? d : (RingOps<R>::zero() - d);
        }
    return adj;
}

// Coefficients c_0..c_q of det(X I - A) = sum c_k X^k via Faddeev-LeVerrier;
// monic, exact thanks to the Q-algebra divisions. Optionally also returns
// adj(A) as the byproduct (the second, independent route to the adjugate).
template <class R>
std::vector<R> charpoly(const RingMatrix<R>& a, RingMatrix<R>* adj_out = nullptr) {
    int q = a.size();
    std::vector<R> c(static_cast<size_t>(q) + 1, RingOps<R>::zero());
    c[static_cast<size_t>(q)] = RingOps<R>::one();
    RingMatrix<R> n = RingMatrix<R>::identity(q);  // N_0
    for (int k = 1; k <= q; ++k) {
        RingMatrix<R> mk = a * n;
        R ck = RingOps<R>::div_int(mk.trace(), -k);
        c[static_cast<size_t>(q - k)] = ck;
        if (k < q) {
            n = mk;
            for (int i = 0; i < q; ++i) n.at(i, i) = n.at(i, i) + ck;
        }
    }
    if (adj_out) {
        // adj(A) = (-1)^(q-1) N_{q-1} with N_{q-1} = sum_{j<q} c_{j+1} A^j.
        RingMatrix<R> acc = RingMatrix<R>::identity(q).scaled(c[1]);
        RingMatrix<R> pw = RingMatrix<R>::identity(q);
        for (int k = 1; k <= q - 1; ++k) {
            pw = pw * a;
            acc = acc + pw.scaled(c[static_cast<size_t>(k) + 1]);
        }
        if (q % 2 == 0) acc = RingMatrix<R>(q) - acc;
        *adj_out = acc;
    }
    return c;
}

// det(C + u v^T) = det(C) + v^T adj(C) u  (rank-one update identity).
template <class R>
R det_rank_one_update(const RingMatrix<R>& c, const std::vector<R>& u, const std::vector<R>& v) {
    int q = c.size();
    if (static_cast<int>(u.size()) != q || static_cast<int>(v.size()) != q)
        raise(ErrorKind::Internal, "rank-one update dimension mismatch");
    RingMatrix<R> adj = adjugate(c);
    R acc = det(c);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            acc = acc + v[static_cast<size_t>(i)] * adj.at(i, j) * u[static_cast<size_t>(j)];
    return acc;
}

// Exact inverse over the fraction field; raises Inversion when singular.
inline RingMatrix<Coeff> inverse(const RingMatrix<Coeff>& m) {
    Coeff d = det(m);
    if (d.is_zero()) raise(ErrorKind::Inversion, "matrix is singular");
    return adjugate(m).map([&](const Coeff& c) { return c / d; });
}

}  // namespace lbmfd
