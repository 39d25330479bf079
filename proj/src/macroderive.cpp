#include "lbmfd/macroderive.hpp"

#include <set>
#include <sstream>

namespace lbmfd {

JetPoly flux_gradient(const LBMScheme& s, int i) {
    RingMatrix<DiffOp> g = moment_gradient_matrix(s);
    JetPoly acc;
    for (int j = 0; j < s.q; ++j) {
        if (g.at(i, j).is_zero()) continue;
        JetPoly target = (j < s.N) ? JetPoly::moment(j)
                                   : JetPoly::from_moment_poly(s.equilibria[static_cast<size_t>(j)]);
        acc += target.apply(g.at(i, j));
    }
    return acc;
}

namespace {

std::vector<JetPoly> all_flux_gradients(const LBMScheme& s) {
    std::vector<JetPoly> gs;
    for (int i = 0; i < s.N; ++i) gs.push_back(flux_gradient(s, i));
    return gs;
}

}  // namespace

PDESystem derive_order1(const LBMScheme& s) {
    require_valid(s);
    PDESystem p;
    p.order = 1;
    p.N = s.N;
    for (int i = 0; i < s.N; ++i) p.spatial.push_back({flux_gradient(s, i)});
    return p;
}

PDESystem derive_order2_closed(const LBMScheme& s) {
    require_valid(s);
    RingMatrix<DiffOp> g = moment_gradient_matrix(s);
    std::vector<JetPoly> gammas = all_flux_gradients(s);
    PDESystem p;
    p.order = 2;
    p.N = s.N;
    for (int i = 0; i < s.N; ++i) {
        JetPoly second;
        for (int j = s.N; j < s.q; ++j) {
            if (g.at(i, j).is_zero()) continue;
            const MomentPoly& eq_j = s.equilibria[static_cast<size_t>(j)];
            JetPoly bracket;
            for (int l = 0; l < s.N; ++l) {
                MomentPoly d_eq = eq_j.derivative(l);
                if (!d_eq.is_zero())
                    bracket += JetPoly::from_moment_poly(d_eq) * gammas[static_cast<size_t>(l)];
            }
            for (int l = 0; l < s.q; ++l) {
                if (g.at(j, l).is_zero()) continue;
                JetPoly target = (l < s.N)
                                     ? JetPoly::moment(l)
                                     : JetPoly::from_moment_poly(s.equilibria[static_cast<size_t>(l)]);
                bracket -= target.apply(g.at(j, l));
            }
            Coeff henon = s.rates[static_cast<size_t>(j)].inverse() - Coeff(Rational(1, 2));
            second += bracket.apply(g.at(i, j)) * henon;
        }
        second = second * s.lattice_speed.inverse();
        p.spatial.push_back({gammas[static_cast<size_t>(i)], second});
    }
    return p;
}

JetPoly eliminate_time_derivatives(const JetPoly& p, const std::vector<JetPoly>& gammas) {
    JetPoly cur = p;
    while (true) {
        int mx = cur.max_dt();
        if (mx == 0) return cur;
        // Collect the variables at the top time order and substitute them.
        std::set<JetVar> vars;
        for (const auto& [m, c] : cur.terms())
            for (const auto& [v, e] : m.factors)
                if (v.dt == mx) vars.insert(v);
        for (const JetVar& v : vars) {
            if (v.moment >= static_cast<int>(gammas.size()))
                raise(ErrorKind::Elimination, "no first-order rule for " + v.str());
            // dt^a d^nu m_l = d^nu dt^(a-1) (-Gamma_l).
            JetPoly repl = -gammas[static_cast<size_t>(v.moment)];
            for (int k = 0; k < v.dt - 1; ++k) repl = repl.d_dt();
            for (int axis = 0; axis < 3; ++axis)
                for (int k = 0; k < v.dx[static_cast<size_t>(axis)]; ++k) repl = repl.d_dx(axis);
            cur = cur.substitute(v, repl);
        }
    }
}

PDESystem derive_via_series(const LBMScheme& s, int order, bool symbolic_limit) {
    require_valid(s);
    if (order < 1 || order > 3) raise(ErrorKind::Usage, "derivation order must be 1 or 2 (3 experimental)");

    LBMScheme work = s;
    std::vector<Param> limit_params;
    if (symbolic_limit) {
        for (int i = 0; i < s.N; ++i) {
            Param p("conserved_rate_tmp" + std::to_string(i + 1));
            limit_params.push_back(p);
            work.rates[static_cast<size_t>(i)] = Coeff::param(p);
        }
    } else {
        work = s.with_conserved_rates_zero();
    }

    std::vector<JetPoly> gammas = all_flux_gradients(s);
    RingMatrix<DiffOp> g = moment_gradient_matrix(work);
    int q = s.q;

    // A and B series and the jet embeddings of the moments/equilibria.
    SeriesMatrix a_full = stream_series(g, work.lattice_speed, order);
    std::vector<JetPoly> moment_jets, eq_jets;
    for (int j = 0; j < q; ++j) {
        moment_jets.push_back(j < s.N ? JetPoly::moment(j) : JetPoly::zero());
        eq_jets.push_back(JetPoly::from_moment_poly(work.equilibria[static_cast<size_t>(j)]));
    }
    SeriesMatrix a_mat(q), b_mat(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            Coeff sj = work.rates[static_cast<size_t>(j)];
            a_mat.at(i, j) = a_full.at(i, j) * (Coeff(1) - sj);
            b_mat.at(i, j) = a_full.at(i, j) * sj;
        }

    PDESystem out;
    out.order = order;
    out.N = s.N;

    for (int i = 0; i < s.N; ++i) {
        SeriesMatrix resolvent = resolvent_series_cut(work, i, order);
        std::set<int> keep{i};
        for (int k = s.N; k < q; ++k) keep.insert(k);
        SeriesMatrix a_cut = a_mat.cut(keep);
        SeriesMatrix a_diamond = a_mat - a_cut;

        SeriesDetAdj da = series_det_adj(resolvent);
        SeriesMatrix adj_ad = da.adj * a_diamond;
        SeriesMatrix adj_b = da.adj * b_mat;

        if (symbolic_limit) {
            for (Param p : limit_params) {
                da.det = series_limit_at_zero(da.det, p);
                adj_ad = series_limit_at_zero(adj_ad, p);
                adj_b = series_limit_at_zero(adj_b, p);
            }
        }

        // Developed equation: det m_i - (adj Ad m)_i - (adj B m_eq)_i,
        // assembled order by order as jet polynomials.
        JetSeries eq(static_cast<size_t>(order) + 1);
        for (int r = 0; r <= order; ++r) {
            JetPoly acc = moment_jets[static_cast<size_t>(i)].apply(da.det.coeff(r));
            for (int j = 0; j < q; ++j) {
                if (!adj_ad.at(i, j).coeff(r).is_zero())
                    acc -= moment_jets[static_cast<size_t>(j)].apply(adj_ad.at(i, j).coeff(r));
                if (!adj_b.at(i, j).coeff(r).is_zero())
                    acc -= eq_jets[static_cast<size_t>(j)].apply(adj_b.at(i, j).coeff(r));
            }
            eq[static_cast<size_t>(r)] = acc;
        }

        if (!eq[0].is_zero())
            raise(ErrorKind::Conservation,
                  "developed equation has a nonzero Dx^0 term for m" + std::to_string(i + 1) +
                      ": " + eq[0].str());

        // Leading constant: coefficient of dt m_i at order 1 must be Pi/lambda.
        Coeff lead = eq[1].coeff_of_var(JetVar{i, 1, {0, 0, 0}});
        if (lead.is_zero())
            raise(ErrorKind::Conservation, "missing dt m_i term in the developed equation");
        Coeff expected = s.pi() / s.lattice_speed;
        if (lead != expected)
            raise(ErrorKind::Internal, "leading constant " + lead.str() + " differs from Pi/lambda");

        std::vector<JetPoly> spatial;
        for (int r = 1; r <= order; ++r) {
            JetPoly part = eq[static_cast<size_t>(r)] * lead.inverse();
            if (r == 1) {
                // Strip the leading dt m_i; the remainder must be spatial.
                part -= JetPoly::var(JetVar{i, 1, {0, 0, 0}});
                if (part.max_dt() > 0)
                    raise(ErrorKind::Elimination,
                          "time-derivative jet at order Dx^0 beyond dt m_i: " + part.str());
            } else {
                part = eliminate_time_derivatives(part, gammas);
            }
            spatial.push_back(part);
        }
        out.spatial.push_back(std::move(spatial));
    }
    return out;
}

PdeDiff pde_equal(const PDESystem& a, const PDESystem& b) {
    PdeDiff res;
    if (a.order != b.order || a.N != b.N) {
        res.equal = false;
        res.diff = "incompatible order or conserved count";
        return res;
    }
    res.equal = true;
    std::ostringstream os;
    for (int i = 0; i < a.N; ++i)
        for (int r = 0; r < a.order; ++r) {
            const JetPoly& pa = a.spatial[static_cast<size_t>(i)][static_cast<size_t>(r)];
            const JetPoly& pb = b.spatial[static_cast<size_t>(i)][static_cast<size_t>(r)];
            if (pa != pb) {
                res.equal = false;
                os << "m" << (i + 1) << " at Dx^" << r << ": difference = " << (pa - pb).str()
                   << "\n";
            }
        }
    res.diff = os.str();
    return res;
}

std::string PDESystem::str() const {
    std::ostringstream os;
    for (int i = 0; i < N; ++i) {
        os << "dt m" << (i + 1);
        for (int r = 0; r < order; ++r) {
            const JetPoly& p = spatial[static_cast<size_t>(i)][static_cast<size_t>(r)];
            if (p.is_zero()) continue;
            os << " + ";
            if (r > 0) os << "Dx" << (r > 1 ? "^" + std::to_string(r) : "") << "*[";
            os << p.str();
            if (r > 0) os << "]";
        }
        os << " = O(Dx^" << order << ")\n";
    }
    return os.str();
}

std::string PDESystem::latex(int i) const {
    std::ostringstream os;
    os << "\\partial_t m_{" << (i + 1) << "}";
    for (int r = 0; r < order; ++r) {
        const JetPoly& p = spatial[static_cast<size_t>(i)][static_cast<size_t>(r)];
        if (p.is_zero()) continue;
        os << " + ";
        if (r > 0) os << "\\Delta x" << (r > 1 ? "^{" + std::to_string(r) + "}" : "")
                      << " \\left(";
        os << p.latex();
        if (r > 0) os << "\\right)";
    }
    os << " = O(\\Delta x^{" << order << "})";
    return os.str();
}

}  // namespace lbmfd
