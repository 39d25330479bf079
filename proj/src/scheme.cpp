#include "lbmfd/scheme.hpp"

#include <sstream>

namespace lbmfd {

Coeff LBMScheme::pi() const {
    Coeff p(1);
    for (int i = N; i < q; ++i) p *= rates[static_cast<size_t>(i)];
    return p;
}

bool LBMScheme::linear_equilibria() const {
    for (const auto& e : equilibria)
        if (!e.is_linear()) return false;
    return true;
}

LBMScheme LBMScheme::with_conserved_rates_zero() const {
    return with_conserved_rates(std::vector<Coeff>(static_cast<size_t>(N), Coeff(0)));
}

LBMScheme LBMScheme::with_conserved_rates(const std::vector<Coeff>& conserved) const {
    LBMScheme s = *this;
    for (int i = 0; i < N && i < static_cast<int>(conserved.size()); ++i)
        s.rates[static_cast<size_t>(i)] = conserved[static_cast<size_t>(i)];
    return s;
}

std::string ValidationReport::str() const {
    std::ostringstream os;
    for (const auto& i : issues)
        os << (i.is_error ? "error" : "warning") << " [" << i.component << "]: " << i.message
           << "\n";
    if (issues.empty()) os << "valid\n";
    return os.str();
}

ValidationReport validate(const LBMScheme& s) {
    ValidationReport r;
    auto err = [&](const std::string& comp, const std::string& msg) {
        r.issues.push_back({true, comp, msg});
    };
    auto warn = [&](const std::string& comp, const std::string& msg) {
        r.issues.push_back({false, comp, msg});
    };

    if (s.d < 1 || s.d > 3) err("dimension", "dimension must be 1, 2 or 3");
    if (s.q < 2) err("velocities", "at least two discrete velocities are required");
    if (s.N < 1 || s.N > s.q - 1)
        err("conserved", "conserved count must lie in [1, q-1]");
    if (static_cast<int>(s.velocities.size()) != s.q)
        err("velocities", "expected " + std::to_string(s.q) + " velocities");
    if (static_cast<int>(s.rates.size()) != s.q)
        err("relaxation", "expected " + std::to_string(s.q) + " relaxation rates");
    if (static_cast<int>(s.equilibria.size()) != s.q)
        err("equilibria", "expected " + std::to_string(s.q) + " equilibria");
    if (s.moment_matrix.size() != s.q) err("moments", "moment matrix must be q x q");
    if (!r.ok()) return r;

    for (int k = s.d; k < 3; ++k)
        for (int j = 0; j < s.q; ++j)
            if (s.velocities[static_cast<size_t>(j)][static_cast<size_t>(k)] != 0)
                err("velocities", "velocity " + std::to_string(j + 1) +
                                      " uses an axis beyond the declared dimension");

    if (det(s.moment_matrix).is_zero())
        err("moments", "moment matrix is singular");

    for (int i = 0; i < s.N; ++i) {
        if (s.equilibria[static_cast<size_t>(i)] != MomentPoly::moment(i))
            err("equilibria", "moment m" + std::to_string(i + 1) +
                                  " is declared conserved but its equilibrium is not m" +
                                  std::to_string(i + 1));
    }
    for (int j = s.N; j < s.q; ++j) {
        const Coeff& sj = s.rates[static_cast<size_t>(j)];
        if (sj.is_zero())
            err("relaxation", "non-conserved rate s" + std::to_string(j + 1) + " is zero");
        else if (sj.is_rational()) {
            Rational v = sj.rational_value();
            if (v <= 0 || v > 2)
                warn("relaxation", "rate s" + std::to_string(j + 1) + " = " + v.get_str() +
                                       " lies outside (0, 2]");
        }
        if (s.equilibria[static_cast<size_t>(j)].max_moment() >= s.N)
            err("equilibria", "equilibrium of m" + std::to_string(j + 1) +
                                  " references a non-conserved moment");
    }
    return r;
}

void require_valid(const LBMScheme& s) {
    ValidationReport r = validate(s);
    if (!r.ok()) raise(ErrorKind::Validation, "invalid scheme:\n" + r.str());
}

namespace {

RingMatrix<LaurentPoly> stream_with_sign(const LBMScheme& s, int sign) {
    RingMatrix<Coeff> minv = inverse(s.moment_matrix);
    int q = s.q;
    RingMatrix<LaurentPoly> t(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            LaurentPoly acc;
            for (int k = 0; k < q; ++k) {
                Coeff c = s.moment_matrix.at(i, k) * minv.at(k, j);
                if (c.is_zero()) continue;
                SpaceExp z = s.velocities[static_cast<size_t>(k)];
                for (int a = 0; a < 3; ++a) z[static_cast<size_t>(a)] *= sign;
                acc.add_term(z, c);
            }
            t.at(i, j) = acc;
        }
    return t;
}

}  // namespace

RingMatrix<LaurentPoly> stream_matrix(const LBMScheme& s) { return stream_with_sign(s, 1); }

RingMatrix<LaurentPoly> conjugate_stream_matrix(const LBMScheme& s) {
    return stream_with_sign(s, -1);
}

SchemeMatrices scheme_matrices(const LBMScheme& s) {
    RingMatrix<LaurentPoly> t = stream_matrix(s);
    int q = s.q;
    SchemeMatrices m{RingMatrix<LaurentPoly>(q), RingMatrix<LaurentPoly>(q)};
    for (int j = 0; j < q; ++j) {
        Coeff sj = s.rates[static_cast<size_t>(j)];
        Coeff one_minus = Coeff(1) - sj;
        for (int i = 0; i < q; ++i) {
            m.A.at(i, j) = t.at(i, j) * one_minus;
            m.B.at(i, j) = t.at(i, j) * sj;
        }
    }
    return m;
}

}  // namespace lbmfd
