#pragma once

#include <array>
#include <map>
#include <string>

#include "lbmfd/coeff.hpp"

namespace lbmfd {

// d_t^a d_x^nu as a commutative monomial.
struct DKey {
    int dt = 0;
    std::array<int, 3> dx{0, 0, 0};
    friend bool operator<(const DKey& a, const DKey& b) {
        if (a.dt != b.dt) return a.dt < b.dt;
        return a.dx < b.dx;
    }
    friend bool operator==(const DKey& a, const DKey& b) { return a.dt == b.dt && a.dx == b.dx; }
    int space_order() const { return dx[0] + dx[1] + dx[2]; }
};

// Polynomial in the time and space derivative symbols with Coeff
// coefficients: an element of the commutative ring of differential operators.
class DiffOp {
public:
    using Terms = std::map<DKey, Coeff>;

    DiffOp() = default;
    static DiffOp zero() { return DiffOp(); }
    static DiffOp one() { return constant(Coeff(1)); }
    static DiffOp constant(const Coeff& c) {
        DiffOp r;
        r.add_term(DKey{}, c);
        return r;
    }
    static DiffOp dt(int k = 1) {
        DiffOp r;
        r.add_term(DKey{k, {0, 0, 0}}, Coeff(1));
        return r;
    }
    static DiffOp dx(int axis, int k = 1) {
        DKey key;
        key.dx[static_cast<size_t>(axis)] = k;
        DiffOp r;
        r.add_term(key, Coeff(1));
        return r;
    }
    static DiffOp monomial(const DKey& k, const Coeff& c) {
        DiffOp r;
        r.add_term(k, c);
        return r;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == DKey{});
    }

    void add_term(const DKey& k, const Coeff& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    DiffOp operator-() const {
        DiffOp r;
        for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
        return r;
    }
    DiffOp operator+(const DiffOp& o) const {
        DiffOp r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, c);
        return r;
    }
    DiffOp operator-(const DiffOp& o) const {
        DiffOp r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k, -c);
        return r;
    }
    DiffOp operator*(const DiffOp& o) const {
        DiffOp r;
        for (const auto& [ka, ca] : terms_)
            for (const auto& [kb, cb] : o.terms_) {
                DKey k{ka.dt + kb.dt,
                       {ka.dx[0] + kb.dx[0], ka.dx[1] + kb.dx[1], ka.dx[2] + kb.dx[2]}};
                r.add_term(k, ca * cb);
            }
        return r;
    }
    DiffOp operator*(const Coeff& c) const {
        DiffOp r;
        for (const auto& [k, a] : terms_) r.add_term(k, a * c);
        return r;
    }
    DiffOp& operator+=(const DiffOp& o) { *this = *this + o; return *this; }
    DiffOp& operator-=(const DiffOp& o) { *this = *this - o; return *this; }

    friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    template <class Fn>
    DiffOp map_coeffs(Fn&& fn) const {
        DiffOp r;
        for (const auto& [k, c] : terms_) r.add_term(k, fn(c));
        return r;
    }

    std::string str() const;
    std::string latex() const;

private:
    Terms terms_;
};

inline DiffOp operator*(const Coeff& c, const DiffOp& d) { return d * c; }

}  // namespace lbmfd
