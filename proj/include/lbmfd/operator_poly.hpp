#pragma once

#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "lbmfd/coeff.hpp"

namespace lbmfd {

// Integer offset on the space lattice; unused axes stay 0, so one key type
// serves every dimension d <= 3.
using SpaceExp = std::array<int, 3>;

inline SpaceExp space_exp(int x = 0, int y = 0, int z = 0) { return {x, y, z}; }

inline SpaceExp add(const SpaceExp& a, const SpaceExp& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

// (time shift degree, space offset); time degrees are nonnegative.
struct OpKey {
    int t = 0;
    SpaceExp z{0, 0, 0};
    friend bool operator<(const OpKey& a, const OpKey& b) {
        if (a.t != b.t) return a.t < b.t;
        return a.z < b.z;
    }
    friend bool operator==(const OpKey& a, const OpKey& b) { return a.t == b.t && a.z == b.z; }
};

inline OpKey add(const OpKey& a, const OpKey& b) { return {a.t + b.t, add(a.z, b.z)}; }

// Shared sparse-polynomial machinery for the two discrete-operator rings:
// Laurent polynomials in the space shifts and polynomials in the time shift
// tensored with them. Products of keys add exponents.
template <class Key>
class SparseOp {
public:
    using Terms = std::map<Key, Coeff>;

    SparseOp() = default;

    static SparseOp zero() { return SparseOp(); }
    static SparseOp one() { return monomial(Key{}, Coeff(1)); }
    static SparseOp constant(const Coeff& c) { return monomial(Key{}, c); }
    static SparseOp monomial(const Key& k, const Coeff& c) {
        SparseOp r;
        if (!c.is_zero()) r.terms_.emplace(k, c);
        return r;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add_term(const Key& k, const Coeff& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    SparseOp operator-() const {
        SparseOp r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }
    SparseOp operator+(const SparseOp& o) const {
        SparseOp r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, c);
        return r;
    }
    SparseOp operator-(const SparseOp& o) const {
        SparseOp r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
        return r;
    }
    SparseOp operator*(const SparseOp& o) const {
        SparseOp r;
        for (const auto& [ka, ca] : terms_)
            for (const auto& [kb, cb] : o.terms_) r.add_term(add(ka, kb), ca * cb);
        return r;
    }
    SparseOp operator*(const Coeff& c) const {
        SparseOp r;
        if (c.is_zero()) return r;
        for (const auto& [k, a] : terms_) r.add_term(k, a * c);
        return r;
    }
    SparseOp& operator+=(const SparseOp& o) { *this = *this + o; return *this; }
    SparseOp& operator-=(const SparseOp& o) { *this = *this - o; return *this; }
    SparseOp& operator*=(const SparseOp& o) { *this = *this * o; return *this; }

    friend bool operator==(const SparseOp& a, const SparseOp& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const SparseOp& a, const SparseOp& b) { return !(a == b); }

    Coeff coeff(const Key& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Coeff() : it->second;
    }

    template <class Fn>
    SparseOp map_coeffs(Fn&& fn) const {
        SparseOp r;
        for (const auto& [k, c] : terms_) r.add_term(k, fn(c));
        return r;
    }

private:
    Terms terms_;
};

using LaurentPoly = SparseOp<SpaceExp>;
using OperatorPoly = SparseOp<OpKey>;

inline LaurentPoly shift_op(const SpaceExp& z) { return LaurentPoly::monomial(z, Coeff(1)); }
inline OperatorPoly time_shift(int k = 1) { return OperatorPoly::monomial(OpKey{k, {0, 0, 0}}, Coeff(1)); }

inline OperatorPoly to_operator(const LaurentPoly& p, int time_degree = 0) {
    OperatorPoly r;
    for (const auto& [z, c] : p.terms()) r.add_term(OpKey{time_degree, z}, c);
    return r;
}

// Time-degree helpers for the FD reduction.
int min_time_degree(const OperatorPoly& p);
int max_time_degree(const OperatorPoly& p);
// Divides by z^k; raises Internal if some term has a lower time degree.
OperatorPoly shift_time_down(const OperatorPoly& p, int k);
// Laurent coefficient of z^k.
LaurentPoly time_coeff(const OperatorPoly& p, int k);

std::string to_string(const LaurentPoly& p);
std::string to_string(const OperatorPoly& p);

// ---------------------------------------------------------------------------
// Action on lattice functions (periodic in space).

template <class T>
struct GridFn {
    int d = 1;
    std::array<int, 3> n{1, 1, 1};  // cells per axis; unused axes 1
    std::vector<T> v;

    static GridFn zeros(int d_, std::array<int, 3> n_) {
        GridFn g;
        g.d = d_;
        g.n = n_;
        for (int k = d_; k < 3; ++k) g.n[k] = 1;
        g.v.assign(static_cast<size_t>(g.n[0]) * g.n[1] * g.n[2], T(0));
        return g;
    }
    size_t index(std::array<int, 3> x) const {
        auto wrap = [](int a, int m) {
            int r = a % m;
            return r < 0 ? r + m : r;
        };
        return static_cast<size_t>(wrap(x[0], n[0])) +
               static_cast<size_t>(n[0]) *
                   (static_cast<size_t>(wrap(x[1], n[1])) +
                    static_cast<size_t>(n[1]) * static_cast<size_t>(wrap(x[2], n[2])));
    }
    T& at(std::array<int, 3> x) { return v[index(x)]; }
    const T& at(std::array<int, 3> x) const { return v[index(x)]; }
    size_t cells() const { return v.size(); }
};

// Applies a discrete operator with fully numeric coefficients to a space-time
// history. history[k] is the grid at time t + k*dt; the result is the grid
// function (op u)(t, .). Periodic wrap in space.
template <class T>
GridFn<T> apply_operator(const OperatorPoly& op, const std::vector<GridFn<T>>& history) {
    if (history.empty()) raise(ErrorKind::History, "empty history");
    int need = max_time_degree(op);
    if (need >= static_cast<int>(history.size()))
        raise(ErrorKind::History, "history holds " + std::to_string(history.size()) +
                                      " levels, operator needs time degree " + std::to_string(need));
    GridFn<T> out = GridFn<T>::zeros(history[0].d, history[0].n);
    for (const auto& [key, c] : op.terms()) {
        T w;
        if constexpr (std::is_same_v<T, Rational>) {
            w = c.rational_value();
        } else {
            w = static_cast<T>(to_double(c.rational_value()));
        }
        const GridFn<T>& src = history[static_cast<size_t>(key.t)];
        for (int z2 = 0; z2 < out.n[2]; ++z2)
            for (int z1 = 0; z1 < out.n[1]; ++z1)
                for (int z0 = 0; z0 < out.n[0]; ++z0) {
                    std::array<int, 3> x{z0, z1, z2};
                    std::array<int, 3> xs{z0 - key.z[0], z1 - key.z[1], z2 - key.z[2]};
                    out.at(x) += w * src.at(xs);
                }
    }
    return out;
}

template <class T>
GridFn<T> apply_operator(const LaurentPoly& op, const GridFn<T>& u) {
    std::vector<GridFn<T>> hist{u};
    return apply_operator(to_operator(op), hist);
}

}  // namespace lbmfd
