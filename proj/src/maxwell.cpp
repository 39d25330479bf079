#include "lbmfd/maxwell.hpp"

namespace lbmfd {

namespace {

LBMScheme with_invertible_rates(const LBMScheme& s, bool* defaulted) {
    LBMScheme w = s;
    *defaulted = false;
    for (int i = 0; i < s.N; ++i) {
        if (w.rates[static_cast<size_t>(i)].is_zero()) {
            w.rates[static_cast<size_t>(i)] = Coeff(1);
            *defaulted = true;
        }
    }
    for (int i = s.N; i < s.q; ++i)
        if (w.rates[static_cast<size_t>(i)].is_zero())
            raise(ErrorKind::Validation,
                  "Maxwell iteration requires nonzero rates; s" + std::to_string(i + 1) +
                      " is zero");
    return w;
}

}  // namespace

MaxwellState maxwell_iterate(const LBMScheme& s, int k) {
    require_valid(s);
    if (k < 0 || k > 3) raise(ErrorKind::Usage, "Maxwell iteration supports k in [0, 3]");
    MaxwellState state;
    state.k = k;
    LBMScheme w = with_invertible_rates(s, &state.conserved_rates_defaulted);

    RingMatrix<DiffOp> g = moment_gradient_matrix(w);
    SeriesMatrix shift = conj_stream_shift_series(g, w.lattice_speed, k);
    int q = s.q;
    // V = -S^{-1} (zeta conj(T) - I): rows scaled by -1/s_i.
    SeriesMatrix v(q);
    for (int i = 0; i < q; ++i) {
        Coeff scale = -(w.rates[static_cast<size_t>(i)].inverse());
        for (int j = 0; j < q; ++j) v.at(i, j) = shift.at(i, j) * scale;
    }
    // P = sum_{r<=k} V^r, truncated at order k.
    SeriesMatrix p = RingMatrix<Series>::identity(q);
    SeriesMatrix pw = RingMatrix<Series>::identity(q);
    for (int r = 1; r <= k; ++r) {
        pw = pw * v;
        p = p + pw;
    }

    std::vector<JetPoly> eq_jets;
    for (int j = 0; j < q; ++j)
        eq_jets.push_back(JetPoly::from_moment_poly(w.equilibria[static_cast<size_t>(j)]));

    for (int i = 0; i < q; ++i) {
        JetSeries row(static_cast<size_t>(k) + 1);
        for (int r = 0; r <= k; ++r) {
            JetPoly acc;
            for (int j = 0; j < q; ++j) {
                DiffOp c = p.at(i, j).coeff(r);
                if (!c.is_zero()) acc += eq_jets[static_cast<size_t>(j)].apply(c);
            }
            row[static_cast<size_t>(r)] = acc;
        }
        state.moments.push_back(std::move(row));
    }
    return state;
}

PDESystem maxwell_pde(const LBMScheme& s, int order) {
    if (order < 1 || order > 2) raise(ErrorKind::Usage, "Maxwell PDE order must be 1 or 2");
    MaxwellState state = maxwell_iterate(s, order);
    bool defaulted = false;
    LBMScheme w = with_invertible_rates(s, &defaulted);

    std::vector<JetPoly> gammas;
    for (int i = 0; i < s.N; ++i) gammas.push_back(flux_gradient(s, i));

    PDESystem out;
    out.order = order;
    out.N = s.N;
    for (int i = 0; i < s.N; ++i) {
        // E = m_i - m^(k)_i carries the PDE starting at Dx^1.
        JetSeries e(static_cast<size_t>(order) + 1);
        e[0] = JetPoly::moment(i) - state.moments[static_cast<size_t>(i)][0];
        for (int r = 1; r <= order; ++r)
            e[static_cast<size_t>(r)] = -state.moments[static_cast<size_t>(i)][static_cast<size_t>(r)];
        if (!e[0].is_zero())
            raise(ErrorKind::Conservation,
                  "Maxwell iteration breaks conservation at order 0 for m" + std::to_string(i + 1));

        Coeff lead = e[1].coeff_of_var(JetVar{i, 1, {0, 0, 0}});
        if (lead.is_zero())
            raise(ErrorKind::Conservation, "missing dt m_i term in the Maxwell expansion");
        std::vector<JetPoly> spatial;
        for (int r = 1; r <= order; ++r) {
            JetPoly part = e[static_cast<size_t>(r)] * lead.inverse();
            if (r == 1) {
                part -= JetPoly::var(JetVar{i, 1, {0, 0, 0}});
                if (part.max_dt() > 0)
                    raise(ErrorKind::Elimination,
                          "time-derivative jet at leading order beyond dt m_i");
            } else {
                part = eliminate_time_derivatives(part, gammas);
            }
            spatial.push_back(part);
        }
        out.spatial.push_back(std::move(spatial));
    }
    return out;
}

bool quasi_equilibrium_check(const LBMScheme& s) {
    require_valid(s);
    if (s.N != 1) raise(ErrorKind::Usage, "quasi-equilibrium check is stated for N = 1");
    if (s.rates[0].is_zero())
        raise(ErrorKind::Validation, "quasi-equilibrium check requires s1 != 0");

    auto m = resolvent_series(s, 0);
    auto da = series_det_adj(m);
    // B at order 0 is S itself.
    Coeff s1pi = s.rates[0] * s.pi();
    if (da.det.coeff(0) != DiffOp::constant(s1pi)) return false;
    for (int i = s.N; i < s.q; ++i)
        for (int j = 0; j < s.q; ++j) {
            DiffOp got = da.adj.at(i, j).coeff(0) * s.rates[static_cast<size_t>(j)];
            DiffOp expect = (i == j) ? DiffOp::constant(s1pi) : DiffOp();
            if (got != expect) return false;
        }
    return true;
}

}  // namespace lbmfd
