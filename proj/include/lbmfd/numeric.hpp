#pragma once

#include <functional>
#include <vector>

#include "lbmfd/fdreduce.hpp"
#include "lbmfd/scheme.hpp"

namespace lbmfd {

// Scheme with every parameter bound, ready for execution. T is Rational for
// the exact runs and double for the floating ones.
template <class T>
struct BoundScheme {
    int d = 1, q = 0, N = 1;
    std::vector<SpaceExp> velocities;
    std::vector<std::vector<T>> m, minv;  // q x q row-major
    std::vector<T> rates;
    std::vector<MomentPoly> equilibria;  // coefficients already numeric
};

template <class T>
T numeric_cast(const Rational& r) {
    if constexpr (std::is_same_v<T, Rational>) {
        return r;
    } else {
        return static_cast<T>(to_double(r));
    }
}

template <class T>
BoundScheme<T> bind_scheme(const LBMScheme& s, const std::map<Param, Rational>& bindings) {
    require_valid(s);
    BoundScheme<T> b;
    b.d = s.d;
    b.q = s.q;
    b.N = s.N;
    b.velocities = s.velocities;
    RingMatrix<Coeff> minv = inverse(s.moment_matrix);
    b.m.assign(static_cast<size_t>(s.q), std::vector<T>(static_cast<size_t>(s.q)));
    b.minv = b.m;
    for (int i = 0; i < s.q; ++i)
        for (int j = 0; j < s.q; ++j) {
            b.m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                numeric_cast<T>(s.moment_matrix.at(i, j).evaluate(bindings));
            b.minv[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                numeric_cast<T>(minv.at(i, j).evaluate(bindings));
        }
    for (const Coeff& r : s.rates) b.rates.push_back(numeric_cast<T>(r.evaluate(bindings)));
    for (const MomentPoly& e : s.equilibria) {
        MomentPoly bound;
        for (const auto& [exp, c] : e.terms()) bound.add_term(exp, Coeff(c.evaluate(bindings)));
        b.equilibria.push_back(bound);
    }
    return b;
}

// One collide-stream step in place. moments holds the q moment grids.
template <class T>
void lbm_step(const BoundScheme<T>& b, std::vector<GridFn<T>>& moments) {
    const size_t cells = moments[0].cells();
    const int q = b.q;
    // Collision: m* = (I - S) m + S m_eq(m_1..m_N), pointwise.
    std::vector<T> mloc(static_cast<size_t>(q));
    std::vector<T> cons(static_cast<size_t>(b.N));
    std::vector<GridFn<T>> post = moments;
    for (size_t c = 0; c < cells; ++c) {
        for (int i = 0; i < b.N; ++i) cons[static_cast<size_t>(i)] = moments[static_cast<size_t>(i)].v[c];
        for (int i = 0; i < q; ++i) {
            T mi = moments[static_cast<size_t>(i)].v[c];
            T eq = b.equilibria[static_cast<size_t>(i)].template evaluate<T>(cons);
            post[static_cast<size_t>(i)].v[c] =
                mi + b.rates[static_cast<size_t>(i)] * (eq - mi);
        }
    }
    // To distributions, stream, back to moments.
    std::vector<GridFn<T>> f(static_cast<size_t>(q), GridFn<T>::zeros(moments[0].d, moments[0].n));
    for (int j = 0; j < q; ++j)
        for (size_t c = 0; c < cells; ++c) {
            T acc(0);
            for (int i = 0; i < q; ++i)
                acc += b.minv[static_cast<size_t>(j)][static_cast<size_t>(i)] *
                       post[static_cast<size_t>(i)].v[c];
            f[static_cast<size_t>(j)].v[c] = acc;
        }
    // f_j(t + dt, x) = f_j*(t, x - c_j dx): periodic gather.
    std::vector<GridFn<T>> fs(static_cast<size_t>(q), GridFn<T>::zeros(moments[0].d, moments[0].n));
    const auto& n = moments[0].n;
    for (int j = 0; j < q; ++j) {
        const SpaceExp& cj = b.velocities[static_cast<size_t>(j)];
        for (int z2 = 0; z2 < n[2]; ++z2)
            for (int z1 = 0; z1 < n[1]; ++z1)
                for (int z0 = 0; z0 < n[0]; ++z0)
                    fs[static_cast<size_t>(j)].at({z0, z1, z2}) =
                        f[static_cast<size_t>(j)].at({z0 - cj[0], z1 - cj[1], z2 - cj[2]});
    }
    for (int i = 0; i < q; ++i)
        for (size_t c = 0; c < cells; ++c) {
            T acc(0);
            for (int j = 0; j < q; ++j)
                acc += b.m[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                       fs[static_cast<size_t>(j)].v[c];
            moments[static_cast<size_t>(i)].v[c] = acc;
        }
}

template <class T>
struct LBMRun {
    // conserved[t][i]: grid of moment i at time t (t = 0 is the initial state).
    std::vector<std::vector<GridFn<T>>> conserved;
    std::vector<GridFn<T>> final_moments;
};

// Runs the collide-stream loop; non-conserved moments start at the
// equilibrium of the initial conserved data.
template <class T>
LBMRun<T> lbm_run(const LBMScheme& s, const std::map<Param, Rational>& bindings,
                  const std::vector<GridFn<T>>& init_conserved, int steps) {
    BoundScheme<T> b = bind_scheme<T>(s, bindings);
    std::vector<GridFn<T>> moments;
    std::vector<T> cons(static_cast<size_t>(b.N));
    for (int i = 0; i < b.q; ++i) {
        if (i < b.N) {
            moments.push_back(init_conserved[static_cast<size_t>(i)]);
        } else {
            GridFn<T> g = GridFn<T>::zeros(init_conserved[0].d, init_conserved[0].n);
            for (size_t c = 0; c < g.cells(); ++c) {
                for (int l = 0; l < b.N; ++l)
                    cons[static_cast<size_t>(l)] = init_conserved[static_cast<size_t>(l)].v[c];
                g.v[c] = b.equilibria[static_cast<size_t>(i)].template evaluate<T>(cons);
            }
            moments.push_back(std::move(g));
        }
    }
    LBMRun<T> run;
    auto record = [&]() {
        std::vector<GridFn<T>> snap;
        for (int i = 0; i < b.N; ++i) snap.push_back(moments[static_cast<size_t>(i)]);
        run.conserved.push_back(std::move(snap));
    };
    record();
    for (int t = 0; t < steps; ++t) {
        lbm_step(b, moments);
        record();
    }
    run.final_moments = std::move(moments);
    return run;
}

// Advances the family of numeric stencils in lockstep. seed[t][i] supplies
// the first `depth` time levels of every conserved moment, oldest first,
// where depth = max steps over the family.
template <class T>
std::vector<std::vector<GridFn<T>>> fd_run(const std::vector<NumericStencil>& family,
                                           const std::vector<std::vector<GridFn<T>>>& seed,
                                           int steps) {
    if (family.empty()) raise(ErrorKind::Usage, "empty stencil family");
    int depth = 0;
    for (const auto& f : family) depth = std::max(depth, f.steps);
    if (static_cast<int>(seed.size()) < depth)
        raise(ErrorKind::History, "fd_run needs " + std::to_string(depth) + " seed levels, got " +
                                      std::to_string(seed.size()));
    const int n_moments = static_cast<int>(seed[0].size());
    std::vector<std::vector<GridFn<T>>> history = seed;  // history.back() = newest

    auto shifted = [](const GridFn<T>& g, const SpaceExp& z) {
        GridFn<T> out = GridFn<T>::zeros(g.d, g.n);
        for (int z2 = 0; z2 < g.n[2]; ++z2)
            for (int z1 = 0; z1 < g.n[1]; ++z1)
                for (int z0 = 0; z0 < g.n[0]; ++z0)
                    out.at({z0, z1, z2}) = g.at({z0 - z[0], z1 - z[1], z2 - z[2]});
        return out;
    };

    for (int t = 0; t < steps; ++t) {
        size_t h = history.size();
        std::vector<GridFn<T>> next;
        for (const NumericStencil& f : family) {
            GridFn<T> acc = GridFn<T>::zeros(seed[0][0].d, seed[0][0].n);
            // Level of z-degree k within this scheme: history index
            // h - f.steps + k (the new level is h).
            auto level = [&](int k) -> const std::vector<GridFn<T>>& {
                return history[h - static_cast<size_t>(f.steps) + static_cast<size_t>(k)];
            };
            for (const StencilTerm& term : f.lhs_lower) {
                GridFn<T> g = shifted(level(term.time)[static_cast<size_t>(f.conserved_index)], term.z);
                T w = numeric_cast<T>(term.w);
                for (size_t c = 0; c < acc.cells(); ++c) acc.v[c] -= w * g.v[c];
            }
            for (const auto& [j, terms] : f.conserved)
                for (const StencilTerm& term : terms) {
                    GridFn<T> g = shifted(level(term.time)[static_cast<size_t>(j)], term.z);
                    T w = numeric_cast<T>(term.w);
                    for (size_t c = 0; c < acc.cells(); ++c) acc.v[c] += w * g.v[c];
                }
            std::vector<T> cons(static_cast<size_t>(n_moments));
            for (const auto& [j, terms] : f.equilibrium) {
                // Evaluate the equilibrium pointwise on each referenced level,
                // then shift.
                std::map<int, GridFn<T>> eq_by_level;
                for (const StencilTerm& term : terms) {
                    auto it = eq_by_level.find(term.time);
                    if (it == eq_by_level.end()) {
                        const auto& lv = level(term.time);
                        GridFn<T> eq = GridFn<T>::zeros(lv[0].d, lv[0].n);
                        for (size_t c = 0; c < eq.cells(); ++c) {
                            for (int l = 0; l < n_moments; ++l)
                                cons[static_cast<size_t>(l)] = lv[static_cast<size_t>(l)].v[c];
                            eq.v[c] =
                                f.equilibria[static_cast<size_t>(j)].template evaluate<T>(cons);
                        }
                        it = eq_by_level.emplace(term.time, std::move(eq)).first;
                    }
                    GridFn<T> g = shifted(it->second, term.z);
                    T w = numeric_cast<T>(term.w);
                    for (size_t c = 0; c < acc.cells(); ++c) acc.v[c] += w * g.v[c];
                }
            }
            next.push_back(std::move(acc));
        }
        history.push_back(std::move(next));
    }
    return history;
}

// ---------------------------------------------------------------------------

struct EquivalenceResult {
    Rational max_deviation_exact{0};  // rational mode
    double max_deviation{0.0};       // double mode
    int steps = 0;
    int warmup_levels = 0;
};

// Runs the LBM scheme and its reduced FD family side by side and reports the
// largest difference on the conserved moments. The FD history is seeded from
// an LBM warm-up of depth-1 steps, which makes the comparison exact (zero)
// in rational mode for linear equilibria.
template <class T>
EquivalenceResult equivalence_compare(const LBMScheme& s,
                                      const std::map<Param, Rational>& bindings,
                                      const std::vector<GridFn<T>>& init_conserved, int steps) {
    std::vector<FDScheme> schemes = reduce_multi(s);
    std::vector<NumericStencil> family;
    for (const auto& f : schemes) family.push_back(specialize_stencil(f, s, bindings));
    int depth = 0;
    for (const auto& f : family) depth = std::max(depth, f.steps);

    LBMRun<T> lbm = lbm_run<T>(s, bindings, init_conserved, steps + depth - 1);
    std::vector<std::vector<GridFn<T>>> seed(lbm.conserved.begin(),
                                             lbm.conserved.begin() + depth);
    auto fd = fd_run<T>(family, seed, steps);

    EquivalenceResult res;
    res.steps = steps;
    res.warmup_levels = depth;
    for (size_t t = 0; t < fd.size(); ++t)
        for (size_t i = 0; i < fd[t].size(); ++i)
            for (size_t c = 0; c < fd[t][i].cells(); ++c) {
                T a = fd[t][i].v[c];
                T b = lbm.conserved[t][i].v[c];
                if constexpr (std::is_same_v<T, Rational>) {
                    Rational dev = abs(a - b);
                    if (dev > res.max_deviation_exact) res.max_deviation_exact = dev;
                } else {
                    double dev = std::abs(a - b);
                    if (dev > res.max_deviation) res.max_deviation = dev;
                }
            }
    return res;
}

// ---------------------------------------------------------------------------

struct ConvergenceStudy {
    std::vector<int> cells;
    std::vector<double> errors;
    double observed_order = 0.0;
    bool monotone = true;
    std::string table() const;
};

// Refinement study against a caller-supplied exact profile u(x, t; dx). The
// dx argument lets the reference solve the modified equation, whose
// diffusion is proportional to dx under acoustic scaling. The domain is
// [0, 1) with n cells, dx = 1/n, dt = dx/lambda; lambda must be bound. The
// grid list refines by 2; the observed order is the least-squares slope of
// log(error) against log(dx) in the discrete max norm.
ConvergenceStudy convergence_order(const LBMScheme& s, const std::map<Param, Rational>& bindings,
                                   const std::function<double(double)>& initial,
                                   const std::function<double(double, double, double)>& exact,
                                   const std::vector<int>& grids, double t_final,
                                   int moment_index = 0);

}  // namespace lbmfd
