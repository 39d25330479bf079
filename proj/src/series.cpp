#include "lbmfd/series.hpp"

#include <set>
#include <sstream>

namespace lbmfd {

namespace {

Rational factorial(int n) {
    Rational f(1);
    for (int k = 2; k <= n; ++k) f *= Rational(k);
    return f;
}

// All nu in N^3 with |nu| = r.
std::vector<std::array<int, 3>> multi_indices(int r) {
    std::vector<std::array<int, 3>> out;
    for (int a = 0; a <= r; ++a)
        for (int b = 0; b <= r - a; ++b) out.push_back({a, b, r - a - b});
    return out;
}

}  // namespace

Series expand_shift(const SpaceExp& z, int order) {
    Series s(order);
    for (int r = 0; r <= order; ++r) {
        DiffOp coeff;
        for (const auto& nu : multi_indices(r)) {
            Rational w(1);
            bool vanishes = false;
            for (size_t k = 0; k < 3; ++k) {
                if (nu[k] == 0) continue;
                if (z[k] == 0) {
                    vanishes = true;
                    break;
                }
                w *= pow_rat(Rational(z[k]), nu[k]);
                w /= factorial(nu[k]);
            }
            if (vanishes || lbmfd::is_zero(w)) continue;
            if (r % 2 == 1) w = -w;
            coeff.add_term(DKey{0, nu}, Coeff(w));
        }
        s.set_coeff(r, coeff);
    }
    return s;
}

Series expand_time_shift(const Coeff& lattice_speed, int order) {
    Series s(order);
    for (int r = 0; r <= order; ++r) {
        Coeff w = Coeff(factorial(r)).inverse() * lattice_speed.pow(-r);
        s.set_coeff(r, DiffOp::dt(r) * w);
    }
    return s;
}

Series expand_operator(const OperatorPoly& op, const Coeff& lattice_speed, int order) {
    Series acc(order);
    Series zs = expand_time_shift(lattice_speed, order);
    for (const auto& [key, c] : op.terms()) {
        Series term = expand_shift(key.z, order) * c;
        for (int k = 0; k < key.t; ++k) term = term * zs;
        acc += term;
    }
    return acc;
}

RingMatrix<DiffOp> moment_gradient_matrix(const LBMScheme& s) {
    RingMatrix<Coeff> minv = inverse(s.moment_matrix);
    int q = s.q;
    RingMatrix<DiffOp> g(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            DiffOp acc;
            for (int k = 0; k < q; ++k) {
                Coeff base = s.moment_matrix.at(i, k) * minv.at(k, j);
                if (base.is_zero()) continue;
                for (int axis = 0; axis < s.d; ++axis) {
                    int ca = s.velocities[static_cast<size_t>(k)][static_cast<size_t>(axis)];
                    if (ca == 0) continue;
                    acc += DiffOp::dx(axis) * (base * s.lattice_speed * Coeff(Rational(ca)));
                }
            }
            g.at(i, j) = acc;
        }
    return g;
}

SeriesMatrix stream_series(const RingMatrix<DiffOp>& g, const Coeff& lattice_speed, int order,
                           int sign) {
    int q = g.size();
    SeriesMatrix t(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) t.at(i, j) = Series(order);
    RingMatrix<DiffOp> pw = RingMatrix<DiffOp>::identity(q);
    for (int r = 0; r <= order; ++r) {
        Coeff w = Coeff(factorial(r)).inverse() * lattice_speed.pow(-r);
        if (sign > 0 && r % 2 == 1) w = -w;
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                DiffOp c = t.at(i, j).coeff(r);
                t.at(i, j).set_coeff(r, c + pw.at(i, j) * w);
            }
        if (r < order) pw = pw * g;
    }
    return t;
}

SeriesMatrix stream_series_direct(const LBMScheme& s, int order, int sign) {
    RingMatrix<Coeff> minv = inverse(s.moment_matrix);
    int q = s.q;
    SeriesMatrix t(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            Series acc(order);
            for (int k = 0; k < q; ++k) {
                Coeff base = s.moment_matrix.at(i, k) * minv.at(k, j);
                if (base.is_zero()) continue;
                SpaceExp z = s.velocities[static_cast<size_t>(k)];
                for (size_t axis = 0; axis < 3; ++axis) z[axis] *= sign;
                acc += expand_shift(z, order) * base;
            }
            t.at(i, j) = acc;
        }
    return t;
}

SeriesMatrix resolvent_series(const RingMatrix<DiffOp>& g, const std::vector<Coeff>& rates,
                              const Coeff& lattice_speed, int order) {
    int q = g.size();
    SeriesMatrix m(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) m.at(i, j) = Series(order);
    RingMatrix<DiffOp> pw = RingMatrix<DiffOp>::identity(q);
    for (int r = 0; r <= order; ++r) {
        Coeff w = Coeff(factorial(r)).inverse() * lattice_speed.pow(-r);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                DiffOp c = m.at(i, j).coeff(r);
                if (i == j) c += DiffOp::dt(r) * w;
                Coeff scale = w * (Coeff(1) - rates[static_cast<size_t>(j)]);
                if (r % 2 == 1) scale = -scale;
                c -= pw.at(i, j) * scale;
                m.at(i, j).set_coeff(r, c);
            }
        if (r < order) pw = pw * g;
    }
    return m;
}

SeriesMatrix resolvent_series(const LBMScheme& s, int order) {
    return resolvent_series(moment_gradient_matrix(s), s.rates, s.lattice_speed, order);
}

SeriesMatrix resolvent_series_cut(const LBMScheme& s, int conserved_index, int order) {
    // Coefficient r: (1/(lambda^r r!)) (dt^r I - (-1)^r cut(G^r (I - S))).
    RingMatrix<DiffOp> g = moment_gradient_matrix(s);
    int q = s.q;
    std::set<int> keep{conserved_index};
    for (int k = s.N; k < q; ++k) keep.insert(k);
    SeriesMatrix m(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) m.at(i, j) = Series(order);
    RingMatrix<DiffOp> pw = RingMatrix<DiffOp>::identity(q);
    for (int r = 0; r <= order; ++r) {
        Coeff w = Coeff(factorial(r)).inverse() * s.lattice_speed.pow(-r);
        RingMatrix<DiffOp> cut_pw = pw.cut(keep);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                DiffOp c = m.at(i, j).coeff(r);
                if (i == j) c += DiffOp::dt(r) * w;
                Coeff scale = w * (Coeff(1) - s.rates[static_cast<size_t>(j)]);
                if (r % 2 == 1) scale = -scale;
                c -= cut_pw.at(i, j) * scale;
                m.at(i, j).set_coeff(r, c);
            }
        if (r < order) pw = pw * g;
    }
    return m;
}

SeriesMatrix conj_stream_shift_series(const RingMatrix<DiffOp>& g, const Coeff& lattice_speed,
                                      int order) {
    int q = g.size();
    SeriesMatrix tbar = stream_series(g, lattice_speed, order, -1);
    Series zeta = expand_time_shift(lattice_speed, order);
    SeriesMatrix out(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            out.at(i, j) = zeta * tbar.at(i, j);
            if (i == j) out.at(i, j) -= Series::one().truncated(order);
        }
    return out;
}

SeriesDetAdj series_det_adj(const SeriesMatrix& m) { return {det(m), adjugate(m)}; }

Series series_limit_at_zero(const Series& s, Param p) {
    return s.map_coeffs([&](const Coeff& c) { return c.limit_at_zero(p); });
}

SeriesMatrix series_limit_at_zero(const SeriesMatrix& m, Param p) {
    return m.map([&](const Series& s) { return series_limit_at_zero(s, p); });
}

DetAdjDerivatives<Coeff> det_adj_derivatives_field(const RingMatrix<Coeff>& c,
                                                   const RingMatrix<Coeff>& d,
                                                   const RingMatrix<Coeff>& e) {
    Coeff det_c = det(c);
    if (det_c.is_zero()) raise(ErrorKind::Inversion, "derivative base point is singular");
    RingMatrix<Coeff> cinv = adjugate(c).map([&](const Coeff& x) { return x / det_c; });
    return det_adj_derivatives<Coeff>(cinv, det_c, d, e);
}

std::string Series::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t r = 0; r < c_.size(); ++r) {
        if (c_[r].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (r > 0) os << "Dx" << (r > 1 ? "^" + std::to_string(r) : "") << "*";
        os << "(" << c_[r].str() << ")";
    }
    if (first) os << "0";
    if (known_ != kExact) os << " + O(Dx^" << (known_ + 1) << ")";
    return os.str();
}

}  // namespace lbmfd
