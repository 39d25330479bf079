// Command-line front end: scheme-file ingestion, derivations, cross-checks,
// simulation and convergence studies. Exit status: 0 all checks pass,
// 1 failed check or bad input data, 2 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "lbmfd/fdreduce.hpp"
#include "lbmfd/macroderive.hpp"
#include "lbmfd/maxwell.hpp"
#include "lbmfd/numeric.hpp"
#include "lbmfd/report.hpp"
#include "lbmfd/schemefile.hpp"

using namespace lbmfd;
using nlohmann::json;

namespace {

json stencil_triples(const OperatorPoly& op, int steps) {
    // Time levels relative to the base point t: the z^steps term is the new
    // level t + dt, i.e. offset +1; z^k maps to offset k - steps + 1.
    json arr = json::array();
    for (const auto& [key, c] : op.terms()) {
        json item;
        item["time"] = key.t - steps + 1;
        item["shift"] = {key.z[0], key.z[1], key.z[2]};
        item["coeff"] = c.str();
        arr.push_back(item);
    }
    return arr;
}

json fd_scheme_json(const FDScheme& f) {
    json out;
    out["conserved_moment"] = "m" + std::to_string(f.conserved_index + 1);
    out["time_levels"] = f.steps;
    out["lhs"] = stencil_triples(f.lhs, f.steps);
    json rc = json::object(), re = json::object();
    for (const auto& [j, op] : f.rhs_conserved)
        rc["m" + std::to_string(j + 1)] = stencil_triples(op, f.steps);
    for (const auto& [j, op] : f.rhs_equilibrium)
        re["eq(m" + std::to_string(j + 1) + ")"] = stencil_triples(op, f.steps);
    out["rhs_conserved"] = rc;
    out["rhs_equilibrium"] = re;
    return out;
}

json pde_json(const PDESystem& p) {
    json out;
    out["order"] = p.order;
    json eqs = json::array();
    for (int i = 0; i < p.N; ++i) {
        json eq;
        eq["moment"] = "m" + std::to_string(i + 1);
        std::ostringstream text;
        text << "dt m" << (i + 1);
        for (int r = 0; r < p.order; ++r) {
            const JetPoly& part = p.spatial[static_cast<size_t>(i)][static_cast<size_t>(r)];
            if (part.is_zero()) continue;
            text << " + ";
            if (r > 0) text << "Dx" << (r > 1 ? "^" + std::to_string(r) : "") << "*[";
            text << part.str();
            if (r > 0) text << "]";
        }
        text << " = O(Dx^" << p.order << ")";
        eq["text"] = text.str();
        eq["latex"] = p.latex(i);
        eqs.push_back(eq);
    }
    out["equations"] = eqs;
    return out;
}

json scheme_summary(const SchemeDocument& doc) {
    const LBMScheme& s = doc.scheme;
    json out;
    out["dimension"] = s.d;
    out["velocities"] = s.q;
    out["conserved"] = s.N;
    out["lattice_speed"] = s.lattice_speed.str();
    json rates = json::array();
    for (const auto& r : s.rates) rates.push_back(r.str());
    out["relaxation"] = rates;
    json eqs = json::object();
    for (int j = s.N; j < s.q; ++j)
        eqs["m" + std::to_string(j + 1)] = s.equilibria[static_cast<size_t>(j)].str();
    out["equilibria"] = eqs;
    return out;
}

// Deterministic rational test profile for the simulate command.
std::vector<GridFn<Rational>> default_profile(int n_moments, int cells) {
    std::vector<GridFn<Rational>> out;
    for (int i = 0; i < n_moments; ++i) {
        GridFn<Rational> g = GridFn<Rational>::zeros(1, {cells, 1, 1});
        for (int k = 0; k < cells; ++k)
            g.at({k, 0, 0}) = rat((3 * k + 7 * i) % 13 - 6, 7);
        out.push_back(std::move(g));
    }
    return out;
}

struct CheckOutcome {
    bool all_pass = true;
    json rows = json::array();
    void add(const std::string& name, bool pass, const std::string& detail = "") {
        json row;
        row["name"] = name;
        row["verdict"] = pass ? "pass" : "fail";
        if (!detail.empty()) row["detail"] = detail;
        rows.push_back(row);
        all_pass &= pass;
    }
    void skip(const std::string& name, const std::string& why) {
        json row;
        row["name"] = name;
        row["verdict"] = "skipped";
        row["detail"] = why;
        rows.push_back(row);
    }
};

bool bindings_cover(const LBMScheme& s, const std::map<Param, Rational>& bindings) {
    auto covered = [&](const Coeff& c) {
        for (Param p : c.params())
            if (!bindings.count(p)) return false;
        return true;
    };
    if (!covered(s.lattice_speed)) return false;
    for (int i = 0; i < s.q; ++i)
        for (int j = 0; j < s.q; ++j)
            if (!covered(s.moment_matrix.at(i, j))) return false;
    for (const auto& r : s.rates)
        if (!covered(r)) return false;
    for (const auto& e : s.equilibria)
        for (const auto& [exp, c] : e.terms())
            if (!covered(c)) return false;
    return true;
}

int run_check(const SchemeDocument& doc, Report& report) {
    const LBMScheme& s = doc.scheme;
    CheckOutcome out;

    // Route agreement at both orders.
    for (int order = 1; order <= 2; ++order) {
        PDESystem a = derive_via_series(s, order);
        PDESystem b = (order == 1) ? derive_order1(s) : derive_order2_closed(s);
        PDESystem c = maxwell_pde(s, order);
        auto ab = pde_equal(a, b);
        auto ac = pde_equal(a, c);
        out.add("route agreement order " + std::to_string(order) + " (series vs closed form)",
                ab.equal, ab.diff);
        out.add("route agreement order " + std::to_string(order) + " (series vs Maxwell)",
                ac.equal, ac.diff);
    }

    // Invariance under conserved relaxation rates.
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> num(-4, 4);
    bool inv_ok = true;
    std::string inv_diff;
    for (int trial = 0; trial < 5 && inv_ok; ++trial) {
        std::vector<Coeff> rates;
        for (int i = 0; i < s.N; ++i) rates.push_back(Coeff(rat(num(rng), 3)));
        auto res = invariance_check(s, rates);
        inv_ok &= res.equal;
        inv_diff = res.diff;
    }
    out.add("conserved-rate invariance (5 random choices)", inv_ok, inv_diff);

    // Cayley-Hamilton and the fundamental adjugate relation on zI - A.
    {
        SchemeMatrices ab = scheme_matrices(s.with_conserved_rates_zero());
        auto a = ab.A.map([](const LaurentPoly& p) { return to_operator(p); });
        auto c = charpoly(a);
        RingMatrix<OperatorPoly> acc(s.q);
        RingMatrix<OperatorPoly> pw = RingMatrix<OperatorPoly>::identity(s.q);
        for (int k = 0; k <= s.q; ++k) {
            acc = acc + pw.scaled(c[static_cast<size_t>(k)]);
            if (k < s.q) pw = pw * a;
        }
        out.add("Cayley-Hamilton residual of A", acc.is_zero());
        auto zia = RingMatrix<OperatorPoly>::identity(s.q).scaled(time_shift()) - a;
        auto adj = adjugate(zia);
        auto d = det(zia);
        bool fund = (zia * adj == RingMatrix<OperatorPoly>::identity(s.q).scaled(d));
        out.add("C adj(C) = det(C) I on zI - A", fund);
    }

    // Quasi-equilibrium (N = 1 only).
    if (s.N == 1) {
        LBMScheme s1 = s;
        s1.rates[0] = Coeff(1);
        out.add("quasi-equilibrium of non-conserved moments", quasi_equilibrium_check(s1));
    }

    // Exact discrete equivalence, when the scheme is fully bound.
    if (!bindings_cover(s, doc.bindings)) {
        out.skip("rational-mode discrete equivalence", "unbound parameters");
    } else if (!s.linear_equilibria()) {
        auto res = equivalence_compare<Rational>(s, doc.bindings, default_profile(s.N, 16), 20);
        out.add("rational-mode discrete equivalence (nonlinear equilibria, observed)",
                res.max_deviation_exact == 0);
    } else {
        auto res = equivalence_compare<Rational>(s, doc.bindings, default_profile(s.N, 16), 20);
        out.add("rational-mode discrete equivalence (16 cells, 20 steps)",
                res.max_deviation_exact == 0);
    }

    report.root()["checks"] = out.rows;
    report.root()["all_pass"] = out.all_pass;
    return out.all_pass ? 0 : 1;
}

int write_and_exit(const Report& report, const std::string& report_path, int code) {
    std::cout << report.text();
    if (!report_path.empty()) {
        std::ofstream f(report_path);
        if (!f) {
            std::cerr << "cannot write report to " << report_path << "\n";
            return 2;
        }
        f << report.json_str() << "\n";
    }
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reduce MRT lattice Boltzmann schemes to macroscopic finite-difference "
                 "schemes and derive their equivalent equations"};
    app.require_subcommand(1);

    std::string scheme_path, report_path;
    int order = 2;
    int cells = 16, steps = 20;
    std::string mode = "rational", profile = "advection";
    std::vector<int> grids{64, 128, 256, 512};
    double t_final = 0.5;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("scheme", scheme_path, "scheme description file")->required();
        cmd->add_option("--report", report_path, "write the structured JSON report here");
    };

    auto* c_validate = app.add_subcommand("validate", "check the scheme file");
    add_common(c_validate);
    auto* c_fd = app.add_subcommand("derive-fd", "corresponding finite-difference schemes");
    add_common(c_fd);
    auto* c_eq = app.add_subcommand("equivalent-eqs", "macroscopic equations");
    add_common(c_eq);
    c_eq->add_option("--order", order, "expansion order (1 or 2)")->check(CLI::Range(1, 2));
    auto* c_mx = app.add_subcommand("maxwell", "macroscopic equations via Maxwell iteration");
    add_common(c_mx);
    c_mx->add_option("--order", order, "expansion order (1 or 2)")->check(CLI::Range(1, 2));
    auto* c_check = app.add_subcommand("check", "full cross-check battery");
    add_common(c_check);
    auto* c_sim = app.add_subcommand("simulate", "run the scheme and its FD reduction");
    add_common(c_sim);
    c_sim->add_option("--cells", cells, "grid cells");
    c_sim->add_option("--steps", steps, "time steps");
    c_sim->add_option("--mode", mode, "rational | double")
        ->check(CLI::IsMember({"rational", "double"}));
    auto* c_conv = app.add_subcommand("convergence", "grid refinement study");
    add_common(c_conv);
    c_conv->add_option("--grids", grids, "cell counts (refining by 2)");
    c_conv->add_option("--t-final", t_final, "final time");
    c_conv->add_option("--profile", profile, "reference solution: advection | modified")
        ->check(CLI::IsMember({"advection", "modified"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Report report;
    try {
        if (c_validate->parsed()) {
            SchemeDocument doc;
            try {
                doc = parse_scheme_file(scheme_path);
            } catch (const Error& e) {
                report.root()["validation"] = {{"status", "invalid"}, {"message", e.what()}};
                return write_and_exit(report, report_path, 1);
            }
            report.root()["scheme"] = scheme_summary(doc);
            report.root()["validation"] = {{"status", "valid"}};
            ValidationReport vr = validate(doc.scheme);
            json warnings = json::array();
            for (const auto& i : vr.issues)
                if (!i.is_error) warnings.push_back(i.component + ": " + i.message);
            if (!warnings.empty()) report.root()["validation"]["warnings"] = warnings;
            return write_and_exit(report, report_path, 0);
        }

        SchemeDocument doc;
        try {
            doc = parse_scheme_file(scheme_path);
        } catch (const Error& e) {
            report.root()["validation"] = {{"status", "invalid"}, {"message", e.what()}};
            return write_and_exit(report, report_path, 1);
        }
        const LBMScheme& s = doc.scheme;
        report.root()["scheme"] = scheme_summary(doc);

        if (c_fd->parsed()) {
            json arr = json::array();
            for (const FDScheme& f : reduce_multi(s)) arr.push_back(fd_scheme_json(f));
            report.root()["fd_schemes"] = arr;
            return write_and_exit(report, report_path, 0);
        }
        if (c_eq->parsed() || c_mx->parsed()) {
            PDESystem p = c_mx->parsed() ? maxwell_pde(s, order) : derive_via_series(s, order);
            report.root()["pde"] = pde_json(p);
            // Cross-check against the closed form; a mismatch is a failure.
            PDESystem closed = (order == 1) ? derive_order1(s) : derive_order2_closed(s);
            auto res = pde_equal(p, closed);
            report.root()["cross_check"] = res.equal ? "pass" : "fail";
            if (!res.equal) report.root()["cross_check_diff"] = res.diff;
            if (c_mx->parsed()) {
                MaxwellState st = maxwell_iterate(s, 0);
                if (st.conserved_rates_defaulted)
                    report.root()["note"] =
                        "conserved rates were 0; the Maxwell route used 1 instead";
            }
            return write_and_exit(report, report_path, res.equal ? 0 : 1);
        }
        if (c_check->parsed()) {
            int code = run_check(doc, report);
            return write_and_exit(report, report_path, code);
        }
        if (c_sim->parsed()) {
            if (!bindings_cover(s, doc.bindings))
                raise(ErrorKind::Binding,
                      "simulate needs every parameter bound in the scheme file");
            json sim;
            sim["cells"] = cells;
            sim["steps"] = steps;
            sim["mode"] = mode;
            bool pass = true;
            if (mode == "rational") {
                auto res = equivalence_compare<Rational>(s, doc.bindings,
                                                         default_profile(s.N, cells), steps);
                sim["warmup_levels"] = res.warmup_levels;
                sim["max_deviation"] = res.max_deviation_exact.get_str();
                pass = (res.max_deviation_exact == 0);
            } else {
                std::vector<GridFn<double>> init;
                for (int i = 0; i < s.N; ++i) {
                    GridFn<double> g = GridFn<double>::zeros(1, {cells, 1, 1});
                    for (int k = 0; k < cells; ++k)
                        g.at({k, 0, 0}) = std::sin(2 * M_PI * k / cells + i);
                    init.push_back(std::move(g));
                }
                auto res = equivalence_compare<double>(s, doc.bindings, init, steps);
                sim["warmup_levels"] = res.warmup_levels;
                sim["max_deviation"] = res.max_deviation;
                pass = (res.max_deviation <= 1e-10);
            }
            sim["verdict"] = pass ? "pass" : "fail";
            report.root()["simulate"] = sim;
            return write_and_exit(report, report_path, pass ? 0 : 1);
        }
        if (c_conv->parsed()) {
            if (s.N != 1 || s.d != 1 || !s.linear_equilibria())
                raise(ErrorKind::Usage,
                      "convergence studies support d = 1, N = 1, linear equilibria");
            if (!bindings_cover(s, doc.bindings))
                raise(ErrorKind::Binding,
                      "convergence needs every parameter bound in the scheme file");
            // Advection speed and diffusion coefficient from the derived PDEs.
            PDESystem p2 = derive_order2_closed(s);
            Coeff cadv = p2.spatial[0][0].coeff_of_var(JetVar{0, 0, {1, 0, 0}});
            Coeff kappa = p2.spatial[0][1].coeff_of_var(JetVar{0, 0, {2, 0, 0}});
            double c = to_double(cadv.evaluate(doc.bindings));
            double nu = -to_double(kappa.evaluate(doc.bindings));
            auto initial = [](double x) { return std::sin(2 * M_PI * x); };
            std::function<double(double, double, double)> exact;
            if (profile == "advection") {
                exact = [c](double x, double t, double) {
                    return std::sin(2 * M_PI * (x - c * t));
                };
            } else {
                exact = [c, nu](double x, double t, double dx) {
                    double k = 2 * M_PI;
                    return std::exp(-nu * dx * k * k * t) * std::sin(k * (x - c * t));
                };
            }
            auto study = convergence_order(s, doc.bindings, initial, exact, grids, t_final);
            json conv;
            conv["profile"] = profile;
            conv["advection_speed"] = c;
            conv["diffusion_coefficient_per_dx"] = nu;
            json rows = json::array();
            for (size_t k = 0; k < study.cells.size(); ++k) {
                json row;
                row["cells"] = study.cells[k];
                row["error"] = study.errors[k];
                rows.push_back(row);
            }
            conv["table"] = rows;
            conv["observed_order"] = study.observed_order;
            if (!study.monotone) conv["warning"] = "error sequence is not monotone";
            report.root()["convergence"] = conv;
            return write_and_exit(report, report_path, 0);
        }
        return 2;
    } catch (const Error& e) {
        report.root()["error"] = e.what();
        std::cout << report.text();
        std::cerr << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::Usage ? 2 : 1;
    }
}
