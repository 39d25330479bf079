#include "lbmfd/numeric.hpp"

#include <cmath>
#include <sstream>

namespace lbmfd {

ConvergenceStudy convergence_order(const LBMScheme& s, const std::map<Param, Rational>& bindings,
                                   const std::function<double(double)>& initial,
                                   const std::function<double(double, double, double)>& exact,
                                   const std::vector<int>& grids, double t_final,
                                   int moment_index) {
    if (grids.size() < 2) raise(ErrorKind::Usage, "need at least two grids");
    double lam = 1.0;
    for (const auto& [p, v] : bindings)
        if (p.name() == "lambda") lam = to_double(v);
    ConvergenceStudy st;
    for (int n : grids) {
        double dx = 1.0 / n;
        double dt = dx / lam;
        int steps = static_cast<int>(std::lround(t_final / dt));

        std::vector<GridFn<double>> init;
        for (int i = 0; i < s.N; ++i) {
            GridFn<double> g = GridFn<double>::zeros(1, {n, 1, 1});
            for (int k = 0; k < n; ++k) g.at({k, 0, 0}) = (i == moment_index) ? initial(k * dx) : 0.0;
            init.push_back(std::move(g));
        }
        auto run = lbm_run<double>(s, bindings, init, steps);
        const GridFn<double>& u = run.conserved.back()[static_cast<size_t>(moment_index)];
        double t_eff = steps * dt;
        double err = 0.0;
        for (int k = 0; k < n; ++k)
            err = std::max(err, std::abs(u.at({k, 0, 0}) - exact(k * dx, t_eff, dx)));
        st.cells.push_back(n);
        st.errors.push_back(err);
    }
    for (size_t k = 1; k < st.errors.size(); ++k)
        if (st.errors[k] > st.errors[k - 1]) st.monotone = false;
    // Least-squares slope of log(err) vs log(dx).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = static_cast<int>(st.errors.size());
    for (int k = 0; k < m; ++k) {
        double x = std::log(1.0 / st.cells[static_cast<size_t>(k)]);
        double y = std::log(std::max(st.errors[static_cast<size_t>(k)], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    st.observed_order = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return st;
}

std::string ConvergenceStudy::table() const {
    std::ostringstream os;
    os << "cells        error   order\n";
    for (size_t k = 0; k < cells.size(); ++k) {
        char line[96];
        double local = 0.0;
        if (k > 0 && errors[k] > 0 && errors[k - 1] > 0)
            local = std::log(errors[k - 1] / errors[k]) / std::log(2.0);
        std::snprintf(line, sizeof(line), "%5d %12.4e %7.3f\n", cells[k], errors[k],
                      k > 0 ? local : 0.0);
        os << line;
    }
    char tail[64];
    std::snprintf(tail, sizeof(tail), "observed order (least squares): %.3f\n", observed_order);
    os << tail;
    if (!monotone) os << "warning: error sequence is not monotone\n";
    return os.str();
}

}  // namespace lbmfd
