#include "lbmfd/fdreduce.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace lbmfd {

namespace {

// Divides every part of the scheme by the common power of z (a time shift of
// the whole scheme); removes degenerate all-zero time levels.
void prune_time_levels(OperatorPoly& lhs, std::map<int, OperatorPoly>& rhs_c,
                       std::map<int, OperatorPoly>& rhs_e) {
    int v = min_time_degree(lhs);
    for (const auto& [j, op] : rhs_c)
        if (!op.is_zero()) v = std::min(v, min_time_degree(op));
    for (const auto& [j, op] : rhs_e)
        if (!op.is_zero()) v = std::min(v, min_time_degree(op));
    if (v <= 0) return;
    lhs = shift_time_down(lhs, v);
    for (auto& [j, op] : rhs_c) op = shift_time_down(op, v);
    for (auto& [j, op] : rhs_e) op = shift_time_down(op, v);
}

void drop_zero_entries(std::map<int, OperatorPoly>& m) {
    for (auto it = m.begin(); it != m.end();)
        it = it->second.is_zero() ? m.erase(it) : std::next(it);
}

}  // namespace

FDScheme reduce_with_rates(const LBMScheme& s, int conserved_index) {
    require_valid(s);
    const int q = s.q, N = s.N, i = conserved_index;
    if (i < 0 || i >= N) raise(ErrorKind::Internal, "conserved index out of range");

    SchemeMatrices ab = scheme_matrices(s);
    auto promote = [](const RingMatrix<LaurentPoly>& m) {
        return m.map([](const LaurentPoly& p) { return to_operator(p); });
    };
    RingMatrix<OperatorPoly> a = promote(ab.A);
    RingMatrix<OperatorPoly> b = promote(ab.B);

    std::set<int> keep{i};
    for (int k = N; k < q; ++k) keep.insert(k);
    RingMatrix<OperatorPoly> a_i = a.cut(keep);
    RingMatrix<OperatorPoly> a_diamond = a - a_i;

    RingMatrix<OperatorPoly> resolvent =
        RingMatrix<OperatorPoly>::identity(q).scaled(time_shift()) - a_i;
    OperatorPoly lhs = det(resolvent);
    RingMatrix<OperatorPoly> adj = adjugate(resolvent);

    // Row i of adj(zI - A_i) times the two right-hand matrices.
    auto row_times_col = [&](const RingMatrix<OperatorPoly>& m, int col) {
        OperatorPoly acc;
        for (int l = 0; l < q; ++l) {
            if (adj.at(i, l).is_zero() || m.at(l, col).is_zero()) continue;
            acc += adj.at(i, l) * m.at(l, col);
        }
        return acc;
    };

    std::map<int, OperatorPoly> rhs_c, rhs_e;
    for (int j = 0; j < N; ++j) {
        OperatorPoly op = row_times_col(a_diamond, j) + row_times_col(b, j);
        if (j == i) {
            // The equilibrium of the selected moment is the moment itself;
            // its contribution joins the left-hand side.
            lhs = lhs - op;
        } else if (!op.is_zero()) {
            rhs_c.emplace(j, op);
        }
    }
    for (int j = N; j < q; ++j) {
        OperatorPoly op = row_times_col(b, j);
        if (!op.is_zero()) rhs_e.emplace(j, op);
    }

    // det(zI - A_i) carries the factor z^(N-1); so does the whole row.
    if (N > 1) {
        lhs = shift_time_down(lhs, N - 1);
        for (auto& [j, op] : rhs_c) op = shift_time_down(op, N - 1);
        for (auto& [j, op] : rhs_e) op = shift_time_down(op, N - 1);
    }
    prune_time_levels(lhs, rhs_c, rhs_e);
    drop_zero_entries(rhs_c);
    drop_zero_entries(rhs_e);

    FDScheme f;
    f.conserved_index = i;
    f.N = N;
    f.steps = max_time_degree(lhs);
    f.lhs = lhs;
    f.rhs_conserved = std::move(rhs_c);
    f.rhs_equilibrium = std::move(rhs_e);
    if (time_coeff(f.lhs, f.steps) != LaurentPoly::one())
        raise(ErrorKind::Internal, "reduced scheme is not monic in the time shift");
    return f;
}

FDScheme reduce_single(const LBMScheme& s) {
    if (s.N != 1) raise(ErrorKind::Validation, "reduce_single requires N = 1");
    return reduce_with_rates(s.with_conserved_rates_zero(), 0);
}

std::vector<FDScheme> reduce_multi(const LBMScheme& s) {
    LBMScheme canon = s.with_conserved_rates_zero();
    std::vector<FDScheme> out;
    out.reserve(static_cast<size_t>(s.N));
    for (int i = 0; i < s.N; ++i) out.push_back(reduce_with_rates(canon, i));
    return out;
}

namespace {

void diff_ops(std::ostringstream& os, const std::string& label, const OperatorPoly& a,
              const OperatorPoly& b) {
    if (a == b) return;
    os << label << ": canonical " << to_string(a) << " vs trial " << to_string(b) << "\n";
}

}  // namespace

InvarianceResult invariance_check(const LBMScheme& s,
                                  const std::vector<Coeff>& trial_conserved) {
    LBMScheme trial = s.with_conserved_rates(trial_conserved);
    InvarianceResult res;
    res.equal = true;
    std::ostringstream os;
    for (int i = 0; i < s.N; ++i) {
        FDScheme canon = reduce_with_rates(s.with_conserved_rates_zero(), i);
        FDScheme other = reduce_with_rates(trial, i);
        if (canon == other) continue;
        res.equal = false;
        os << "conserved moment m" << (i + 1) << ":\n";
        diff_ops(os, "  lhs", canon.lhs, other.lhs);
        auto diff_maps = [&](const std::string& name, const std::map<int, OperatorPoly>& ca,
                             const std::map<int, OperatorPoly>& cb) {
            std::set<int> all;
            for (const auto& [j, op] : ca) all.insert(j);
            for (const auto& [j, op] : cb) all.insert(j);
            for (int j : all) {
                auto ia = ca.find(j);
                auto ib = cb.find(j);
                OperatorPoly oa = ia == ca.end() ? OperatorPoly() : ia->second;
                OperatorPoly ob = ib == cb.end() ? OperatorPoly() : ib->second;
                diff_ops(os, "  " + name + " m" + std::to_string(j + 1), oa, ob);
            }
        };
        diff_maps("conserved", canon.rhs_conserved, other.rhs_conserved);
        diff_maps("equilibrium", canon.rhs_equilibrium, other.rhs_equilibrium);
    }
    res.diff = os.str();
    return res;
}

std::string FDScheme::str() const {
    std::ostringstream os;
    os << "scheme for m" << (conserved_index + 1) << " (" << steps << " time level"
       << (steps == 1 ? "" : "s") << "):\n";
    os << "  lhs: " << to_string(lhs) << "\n";
    for (const auto& [j, op] : rhs_conserved)
        os << "  m" << (j + 1) << ": " << to_string(op) << "\n";
    for (const auto& [j, op] : rhs_equilibrium)
        os << "  eq(m" << (j + 1) << "): " << to_string(op) << "\n";
    return os.str();
}

NumericStencil specialize_stencil(const FDScheme& f, const LBMScheme& s,
                                  const std::map<Param, Rational>& bindings) {
    auto bind_op = [&](const OperatorPoly& op) {
        OperatorPoly out;
        for (const auto& [k, c] : op.terms()) out.add_term(k, Coeff(c.evaluate(bindings)));
        return out;
    };
    OperatorPoly lhs = bind_op(f.lhs);
    std::map<int, OperatorPoly> rhs_c, rhs_e;
    for (const auto& [j, op] : f.rhs_conserved) rhs_c.emplace(j, bind_op(op));
    for (const auto& [j, op] : f.rhs_equilibrium) rhs_e.emplace(j, bind_op(op));
    prune_time_levels(lhs, rhs_c, rhs_e);

    NumericStencil n;
    n.conserved_index = f.conserved_index;
    n.N = f.N;
    n.steps = max_time_degree(lhs);
    auto to_terms = [](const OperatorPoly& op, int skip_degree = -1) {
        std::vector<StencilTerm> terms;
        for (const auto& [k, c] : op.terms()) {
            if (k.t == skip_degree) continue;
            terms.push_back({k.t, k.z, c.rational_value()});
        }
        return terms;
    };
    n.lhs_lower = to_terms(lhs, n.steps);
    for (const auto& [j, op] : rhs_c)
        if (!op.is_zero()) n.conserved.emplace(j, to_terms(op));
    for (const auto& [j, op] : rhs_e)
        if (!op.is_zero()) n.equilibrium.emplace(j, to_terms(op));

    for (const auto& eq : s.equilibria) {
        MomentPoly bound;
        for (const auto& [e, c] : eq.terms()) bound.add_term(e, Coeff(c.evaluate(bindings)));
        n.equilibria.push_back(bound);
    }
    return n;
}

}  // namespace lbmfd
