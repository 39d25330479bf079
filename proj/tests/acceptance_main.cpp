// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit status 0 iff all criteria pass (including their time budgets).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>

#include "fixtures.hpp"
#include "lbmfd/macroderive.hpp"
#include "lbmfd/maxwell.hpp"
#include "lbmfd/numeric.hpp"
#include "lbmfd/schemefile.hpp"

using namespace lbmfd;
using testutil::Rng;

namespace {

struct Harness {
    int failures = 0;

    void run(int number, const std::string& label, double budget_seconds,
             const std::function<bool(std::string&)>& body) {
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        std::string detail;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool in_budget = elapsed <= budget_seconds;
        bool pass = ok && in_budget;
        std::printf("%s  criterion %d: %s  (%.2fs, budget %.0fs)\n", pass ? "PASS" : "FAIL",
                    number, label.c_str(), elapsed, budget_seconds);
        if (!ok && !detail.empty()) std::printf("      %s\n", detail.c_str());
        if (!in_budget) std::printf("      exceeded time budget\n");
        if (!pass) ++failures;
    }
};

JetVar jet_dx(int i, int k) { return JetVar{i, 0, {k, 0, 0}}; }

// ---------------------------------------------------------------------------
// Criterion 1: the d1q2 advection-diffusion equation, exactly.

bool criterion1(std::string& detail) {
    Coeff lam = Coeff::param("lambda"), s2 = Coeff::param("s2"), c = Coeff::param("C");
    auto s = testutil::d1q2(lam, s2, c);
    PDESystem p = derive_via_series(s, 2);

    // dt u + C dx u - lambda Dx (1/s2 - 1/2)(1 - C^2/lambda^2) dxx u = O(Dx^2).
    JetPoly expected0 = JetPoly::var(jet_dx(0, 1)) * c;
    Coeff diffusion = -(lam * (s2.inverse() - Coeff(Rational(1, 2))) *
                        (Coeff(1) - c * c / (lam * lam)));
    JetPoly expected1 = JetPoly::var(jet_dx(0, 2)) * diffusion;
    if (p.spatial[0][0] != expected0) {
        detail = "first-order term: " + p.spatial[0][0].str();
        return false;
    }
    if (p.spatial[0][1] != expected1) {
        detail = "second-order term: " + p.spatial[0][1].str() + " vs " + expected1.str();
        return false;
    }

    // The command surface emits the same equation.
    std::string cmd = std::string(LBMFD_CLI_PATH) + " equivalent-eqs --order 2 " +
                      LBMFD_FIXTURE_DIR + "/d1q2.lbm";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        detail = "cannot run the CLI";
        return false;
    }
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int rc = pclose(pipe);
    if (WEXITSTATUS(rc) != 0) {
        detail = "CLI exit status " + std::to_string(WEXITSTATUS(rc));
        return false;
    }
    // Canonical rendering of the diffusion coefficient.
    std::string canon = diffusion.str();
    if (out.find("dx dx m1") == std::string::npos || out.find(canon) == std::string::npos) {
        detail = "CLI output lacks the canonical diffusion term " + canon;
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 2: three-route agreement on randomized schemes.

bool criterion2(std::string& detail) {
    Rng rng(20240607);
    int count = 0;
    for (int iter = 0; iter < 20; ++iter) {
        int q = (iter % 2 == 0) ? 2 : 3;
        int n = (q == 3 && iter % 4 == 1) ? 2 : 1;
        bool quadratic = (iter % 3 == 0);
        auto s = testutil::random_scheme(rng, q, n, quadratic);
        for (int order = 1; order <= 2; ++order) {
            PDESystem a = derive_via_series(s, order);
            PDESystem b = (order == 1) ? derive_order1(s) : derive_order2_closed(s);
            PDESystem c = maxwell_pde(s, order);
            auto ab = pde_equal(a, b);
            auto ac = pde_equal(a, c);
            auto bc = pde_equal(b, c);
            if (!ab.equal || !ac.equal || !bc.equal) {
                detail = "scheme " + std::to_string(iter) + " order " + std::to_string(order) +
                         ":\n" + ab.diff + ac.diff + bc.diff;
                return false;
            }
        }
        ++count;
    }
    if (count < 20) {
        detail = "only " + std::to_string(count) + " schemes checked";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 3: exact discrete equivalence.

bool criterion3(std::string& detail) {
    Rng rng(314159);
    {
        auto s = testutil::d1q2(Coeff::param("lambda"), Coeff::param("s2"), Coeff::param("C"));
        std::map<Param, Rational> bind{{Param("lambda"), Rational(1)},
                                       {Param("C"), rat(1, 2)},
                                       {Param("s2"), rat(3, 2)}};
        GridFn<Rational> u0 = GridFn<Rational>::zeros(1, {16, 1, 1});
        for (auto& v : u0.v) v = testutil::rand_rational(rng, 9, 7);
        auto res = equivalence_compare<Rational>(s, bind, {u0}, 20);
        if (res.max_deviation_exact != 0) {
            detail = "d1q2 deviation " + res.max_deviation_exact.get_str();
            return false;
        }
    }
    {
        MomentPoly eq3 = MomentPoly::moment(0) * Coeff(rat(1, 3)) +
                         MomentPoly::moment(1) * Coeff(rat(2, 5));
        auto s = testutil::d1q3(Coeff::param("lambda"), 2,
                                {Coeff(0), Coeff(0), Coeff(rat(4, 3))}, {eq3});
        std::map<Param, Rational> bind{{Param("lambda"), Rational(1)}};
        std::vector<GridFn<Rational>> init;
        for (int i = 0; i < 2; ++i) {
            GridFn<Rational> g = GridFn<Rational>::zeros(1, {16, 1, 1});
            for (auto& v : g.v) v = testutil::rand_rational(rng, 9, 7);
            init.push_back(std::move(g));
        }
        auto res = equivalence_compare<Rational>(s, bind, init, 20);
        if (res.max_deviation_exact != 0) {
            detail = "d1q3 deviation " + res.max_deviation_exact.get_str();
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 4: invariance under conserved relaxation rates.

bool criterion4(std::string& detail) {
    Rng rng(271828);
    std::uniform_int_distribution<int> num(-6, 6);
    for (int iter = 0; iter < 10; ++iter) {
        int q = 2 + (iter % 2);
        int n = (q == 3 && iter % 3 == 0) ? 2 : 1;
        auto s = testutil::random_scheme(rng, q, n, iter % 2 == 0);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Coeff> rates;
            for (int i = 0; i < n; ++i) rates.push_back(Coeff(rat(num(rng), 4)));
            auto res = invariance_check(s, rates);
            if (!res.equal) {
                detail = "scheme " + std::to_string(iter) + " trial " + std::to_string(trial) +
                         ":\n" + res.diff;
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 5: Cayley-Hamilton and the fundamental adjugate relation.

bool criterion5(std::string& detail) {
    Rng rng(161803);
    for (int sample = 0; sample < 50; ++sample) {
        int q = 2 + (sample % 3);  // 2..4
        RingMatrix<OperatorPoly> m(q);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) m.at(i, j) = testutil::rand_operator(rng, 1, 2, 1, 1);
        auto c = charpoly(m);
        RingMatrix<OperatorPoly> acc(q);
        RingMatrix<OperatorPoly> pw = RingMatrix<OperatorPoly>::identity(q);
        for (int k = 0; k <= q; ++k) {
            acc = acc + pw.scaled(c[static_cast<size_t>(k)]);
            if (k < q) pw = pw * m;
        }
        if (!acc.is_zero()) {
            detail = "Cayley-Hamilton residual nonzero at sample " + std::to_string(sample);
            return false;
        }
        auto adj = adjugate(m);
        auto di = RingMatrix<OperatorPoly>::identity(q).scaled(det(m));
        if (m * adj != di || adj * m != di) {
            detail = "fundamental adjugate relation fails at sample " + std::to_string(sample);
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 6: perturbation formulas for det and adj.

bool criterion6(std::string& detail) {
    // (a) Taylor assembly around S equals the direct truncated series to
    // O(Dx^3), symbolically, for random schemes.
    Rng rng(577215);
    for (int iter = 0; iter < 3; ++iter) {
        int q = 2 + iter;  // 2..4
        auto s = testutil::random_scheme(rng, q, 1, false);
        s.rates[0] = Coeff::param("s1");
        auto m = resolvent_series(s, 2);
        auto direct = series_det_adj(m);

        SeriesMatrix cinv(q), dmat(q);
        Coeff det_c(1);
        for (int i = 0; i < q; ++i) det_c *= s.rates[static_cast<size_t>(i)];
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) {
                if (i == j) cinv.at(i, j) = Series::constant(s.rates[static_cast<size_t>(i)].inverse());
                Series base = (i == j) ? Series::constant(s.rates[static_cast<size_t>(i)])
                                       : Series::zero();
                dmat.at(i, j) = (m.at(i, j) - base).truncated(2);
            }
        auto der = det_adj_derivatives<Series>(cinv, Series::constant(det_c), dmat, dmat);
        Series det_taylor =
            Series::constant(det_c) + der.det_d + der.det_dd * Coeff(Rational(1, 2));
        Param s1p("s1");
        if (!Series::equal_to_order(series_limit_at_zero(direct.det, s1p),
                                    series_limit_at_zero(det_taylor.truncated(2), s1p), 2)) {
            detail = "determinant Taylor mismatch at scheme " + std::to_string(iter);
            return false;
        }
        SeriesMatrix adj_s(q);
        for (int i = 0; i < q; ++i) {
            Coeff prod(1);
            for (int k = 0; k < q; ++k)
                if (k != i) prod *= s.rates[static_cast<size_t>(k)];
            adj_s.at(i, i) = Series::constant(prod);
        }
        SeriesMatrix adj_taylor =
            adj_s + der.adj_d + der.adj_dd.scaled(Series::constant(Coeff(Rational(1, 2))));
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                if (!Series::equal_to_order(
                        series_limit_at_zero(direct.adj.at(i, j), s1p),
                        series_limit_at_zero(adj_taylor.at(i, j).truncated(2), s1p), 2)) {
                    detail = "adjugate Taylor mismatch at scheme " + std::to_string(iter);
                    return false;
                }
    }

    // (b) Central finite differences on random numeric 4x4 matrices, exact
    // quotients compared at 1e-6 relative.
    Rational h = rat(1, 10000);
    for (int iter = 0; iter < 4; ++iter) {
        RingMatrix<Coeff> c(4), d(4), e(4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                c.at(i, j) = Coeff(testutil::rand_rational(rng));
                d.at(i, j) = Coeff(testutil::rand_rational(rng));
                e.at(i, j) = Coeff(testutil::rand_rational(rng));
            }
        if (det(c).is_zero()) continue;
        auto der = det_adj_derivatives_field(c, d, e);
        auto det_at = [&](const Rational& sd, const Rational& se) {
            return det(c + d.scaled(Coeff(sd)) + e.scaled(Coeff(se)));
        };
        auto rel_err = [](double got, double want) {
            return std::abs(got - want) / std::max(1.0, std::abs(want));
        };
        Coeff fd1 = (det_at(h, Rational(0)) - det_at(-h, Rational(0))) * Coeff(Rational(1) / (2 * h));
        if (rel_err(to_double(fd1.rational_value()), to_double(der.det_d.rational_value())) >
            1e-6) {
            detail = "det first derivative off at sample " + std::to_string(iter);
            return false;
        }
        Coeff fd2 = (det_at(h, h) - det_at(h, -h) - det_at(-h, h) + det_at(-h, -h)) *
                    Coeff(Rational(1) / (4 * h * h));
        if (rel_err(to_double(fd2.rational_value()), to_double(der.det_dd.rational_value())) >
            1e-6) {
            detail = "det second derivative off at sample " + std::to_string(iter);
            return false;
        }
        auto adj_at = [&](const Rational& sd, const Rational& se) {
            return adjugate(c + d.scaled(Coeff(sd)) + e.scaled(Coeff(se)));
        };
        auto app = adj_at(h, h), apm = adj_at(h, -h), amp = adj_at(-h, h), amm = adj_at(-h, -h);
        auto ap0 = adj_at(h, Rational(0)), am0 = adj_at(-h, Rational(0));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Coeff f1 = (ap0.at(i, j) - am0.at(i, j)) * Coeff(Rational(1) / (2 * h));
                if (rel_err(to_double(f1.rational_value()),
                            to_double(der.adj_d.at(i, j).rational_value())) > 1e-6) {
                    detail = "adj first derivative off at sample " + std::to_string(iter);
                    return false;
                }
                Coeff f2 = (app.at(i, j) - apm.at(i, j) - amp.at(i, j) + amm.at(i, j)) *
                           Coeff(Rational(1) / (4 * h * h));
                if (rel_err(to_double(f2.rational_value()),
                            to_double(der.adj_dd.at(i, j).rational_value())) > 1e-6) {
                    detail = "adj second derivative off at sample " + std::to_string(iter);
                    return false;
                }
            }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 7: the printed determinant/adjugate displays, symbol for symbol.

bool criterion7(std::string& detail) {
    const int q = 3;
    Coeff lam = Coeff::param("lambda");
    RingMatrix<DiffOp> g(q);
    std::vector<Coeff> rates;
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j)
            g.at(i, j) = DiffOp::dx(0) * Coeff::param("g" + std::to_string(i + 1) +
                                                      std::to_string(j + 1));
    for (int i = 0; i < q; ++i) rates.push_back(Coeff::param("s" + std::to_string(i + 1)));
    Coeff pi = rates[1] * rates[2];
    Coeff half(Rational(1, 2));
    Param s1p("s1");

    auto m = resolvent_series(g, rates, lam, 2);
    auto da = series_det_adj(m);
    Series det_lim = series_limit_at_zero(da.det, s1p);
    SeriesMatrix adj_lim = series_limit_at_zero(da.adj, s1p);

    auto inv_minus = [&](int idx, const Rational& c) {
        return rates[static_cast<size_t>(idx)].inverse() - Coeff(c);
    };

    // Determinant display: Pi (Dx/lambda)(dt + G11 + (Dx/lambda)(...)).
    {
        DiffOp dt = DiffOp::dt();
        DiffOp expect1 = (dt + g.at(0, 0)) * (pi / lam);
        Coeff sum_inv = rates[1].inverse() + rates[2].inverse();
        DiffOp bracket = DiffOp::dt(2) * (Coeff(half) + sum_inv);
        bracket += g.at(0, 0) * dt * sum_inv;
        DiffOp diag_term;
        for (int i = 1; i < q; ++i) diag_term += g.at(i, i) * inv_minus(i, Rational(1));
        bracket += diag_term * dt;
        bracket -= g.at(0, 0) * g.at(0, 0) * half;
        for (int l = 1; l < q; ++l)
            bracket -= g.at(0, l) * g.at(l, 0) * inv_minus(l, Rational(1, 2));
        bracket += g.at(0, 0) * diag_term;
        DiffOp expect2 = bracket * (pi / (lam * lam));
        if (!(det_lim.coeff(0).is_zero() && det_lim.coeff(1) == expect1 &&
              det_lim.coeff(2) == expect2)) {
            detail = "determinant display mismatch";
            return false;
        }
    }

    // The (1,1) entry. The commonly printed form of this display carries its
    // three quadratic terms with a factor 2 that is inconsistent with the
    // second-derivative formula it is assembled from (whose prefactor is
    // Pi Dx^2/lambda^2, so the Taylor 1/2 brings the factor to 1 inside the
    // Pi Dx^2/(2 lambda^2) bracket) and with the direct minor expansion of
    // the adjugate. The expected value below is the consistent assembly; the
    // factor-2 variant is checked to differ by exactly that factor.
    {
        DiffOp dt = DiffOp::dt();
        Coeff sum_inv = rates[1].inverse() + rates[2].inverse();
        DiffOp order1;
        order1 += dt * sum_inv;
        for (int i = 1; i < q; ++i) order1 += g.at(i, i) * inv_minus(i, Rational(1));
        order1 = order1 * (pi / lam);

        auto quadratic_terms = [&](const Rational& factor) {
            DiffOp acc;
            DiffOp relaxed;
            for (int i = 1; i < q; ++i)
                relaxed += (dt + g.at(i, i) * (Coeff(1) - rates[static_cast<size_t>(i)])) *
                           rates[static_cast<size_t>(i)].inverse();
            acc += relaxed * relaxed * Coeff(factor);
            for (int i = 1; i < q; ++i) {
                DiffOp ri = (dt + g.at(i, i) * (Coeff(1) - rates[static_cast<size_t>(i)])) *
                            rates[static_cast<size_t>(i)].inverse();
                acc -= ri * ri * Coeff(factor);
            }
            for (int i = 1; i < q; ++i)
                for (int l = 1; l < q; ++l) {
                    if (l == i) continue;
                    acc -= g.at(i, l) * g.at(l, i) *
                           (inv_minus(i, Rational(1)) * inv_minus(l, Rational(1)) * Coeff(factor));
                }
            return acc;
        };
        DiffOp common = DiffOp::dt(2) * sum_inv;
        for (int i = 1; i < q; ++i) {
            DiffOp inner;
            for (int l = 0; l < q; ++l) inner += g.at(i, l) * g.at(l, i);
            common -= inner * inv_minus(i, Rational(1));
        }
        DiffOp order2_lemma = (common + quadratic_terms(Rational(1))) * (pi * half / (lam * lam));
        DiffOp order2_printed =
            (common + quadratic_terms(Rational(2))) * (pi * half / (lam * lam));
        if (!(adj_lim.at(0, 0).coeff(0) == DiffOp::constant(pi) &&
              adj_lim.at(0, 0).coeff(1) == order1 &&
              adj_lim.at(0, 0).coeff(2) == order2_lemma)) {
            detail = "adjugate (1,1) display mismatch";
            return false;
        }
        if (adj_lim.at(0, 0).coeff(2) == order2_printed) {
            detail = "as-printed variant unexpectedly matches";
            return false;
        }
        std::printf(
            "      note: the commonly printed (1,1) adjugate display carries a factor 2\n"
            "      on its quadratic terms that contradicts the second-derivative formula\n"
            "      it assembles; the reproduction follows the consistent assembly.\n");
    }

    // adj_1j display for j = 2, 3.
    for (int j = 1; j < q; ++j) {
        DiffOp dt = DiffOp::dt();
        Coeff hj = inv_minus(j, Rational(1));  // 1/s_j - 1
        DiffOp order1 = -(g.at(0, j) * (hj * pi / lam));
        DiffOp bracket = g.at(0, 0) * g.at(0, j);
        for (int l = 1; l < q; ++l) bracket += g.at(0, l) * g.at(l, j);
        bracket += g.at(0, j) * (dt + g.at(j, j) * (Coeff(1) - rates[static_cast<size_t>(j)])) *
                   (Coeff(2) * rates[static_cast<size_t>(j)].inverse());
        for (int l = 1; l < q; ++l) {
            if (l == j) continue;
            bracket += g.at(0, l) * g.at(l, j) * (inv_minus(l, Rational(1)) * Coeff(2));
        }
        DiffOp relaxed;
        for (int i = 1; i < q; ++i)
            relaxed += (dt + g.at(i, i) * (Coeff(1) - rates[static_cast<size_t>(i)])) *
                       rates[static_cast<size_t>(i)].inverse();
        bracket -= g.at(0, j) * relaxed * Coeff(2);
        DiffOp order2 = bracket * (hj * pi * half / (lam * lam));
        if (!(adj_lim.at(0, j).coeff(0).is_zero() && adj_lim.at(0, j).coeff(1) == order1 &&
              adj_lim.at(0, j).coeff(2) == order2)) {
            detail = "adjugate (1," + std::to_string(j + 1) + ") display mismatch";
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Criterion 8: observed convergence orders for d1q2.

bool criterion8(std::string& detail) {
    auto s = testutil::d1q2(Coeff::param("lambda"), Coeff::param("s2"), Coeff::param("C"));
    auto initial = [](double x) { return std::sin(2 * M_PI * x); };
    std::vector<int> grids{64, 128, 256, 512};
    double c = 0.5, t_final = 0.5;
    auto bind = [&](const Rational& s2) {
        return std::map<Param, Rational>{
            {Param("lambda"), Rational(1)}, {Param("C"), rat(1, 2)}, {Param("s2"), s2}};
    };
    auto advection = [&](double x, double t, double) { return std::sin(2 * M_PI * (x - c * t)); };

    // s2 = 3/2 against the modified equation's single mode: order 2 +- 0.3.
    double nu = 1.0 * (1.0 / 1.5 - 0.5) * (1.0 - c * c);
    auto modified = [&](double x, double t, double dx) {
        double k = 2 * M_PI;
        return std::exp(-nu * dx * k * k * t) * std::sin(k * (x - c * t));
    };
    auto st_mod = convergence_order(s, bind(rat(3, 2)), initial, modified, grids, t_final);
    if (std::abs(st_mod.observed_order - 2.0) > 0.3) {
        detail = "modified-equation order " + std::to_string(st_mod.observed_order);
        return false;
    }
    // s2 = 2 against pure advection: order 2 +- 0.3.
    auto st_adv2 = convergence_order(s, bind(Rational(2)), initial, advection, grids, t_final);
    if (std::abs(st_adv2.observed_order - 2.0) > 0.3) {
        detail = "s2=2 advection order " + std::to_string(st_adv2.observed_order);
        return false;
    }
    // s2 = 3/2 against pure advection: order 1 +- 0.3.
    auto st_adv1 = convergence_order(s, bind(rat(3, 2)), initial, advection, grids, t_final);
    if (std::abs(st_adv1.observed_order - 1.0) > 0.3) {
        detail = "s2=3/2 advection order " + std::to_string(st_adv1.observed_order);
        return false;
    }
    return true;
}

}  // namespace

int main() {
    Harness h;
    h.run(1, "d1q2 equivalent equation at order 2 (exact symbolic form, CLI emission)", 1.0,
          criterion1);
    h.run(2, "three-route agreement on 20 randomized schemes (orders 1 and 2)", 60.0, criterion2);
    h.run(3, "exact discrete equivalence: d1q2 and d1q3 (N=2), 16 cells, 20 steps", 10.0,
          criterion3);
    h.run(4, "FD schemes invariant under conserved rates (10 schemes x 5 trials)", 30.0,
          criterion4);
    h.run(5, "Cayley-Hamilton and C adj(C) = det(C) I on 50 operator matrices", 30.0, criterion5);
    h.run(6, "det/adj perturbation formulas vs series and finite differences", 30.0, criterion6);
    h.run(7, "determinant/adjugate expansion displays at s1 -> 0 (generic q=3)", 30.0,
          criterion7);
    h.run(8, "d1q2 convergence orders on grids 64..512", 60.0, criterion8);
    if (h.failures == 0) {
        std::printf("all acceptance criteria pass\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", h.failures);
    return 1;
}
