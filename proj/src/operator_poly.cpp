#include "lbmfd/operator_poly.hpp"

namespace lbmfd {

int min_time_degree(const OperatorPoly& p) {
    if (p.is_zero()) return 0;
    int v = p.terms().begin()->first.t;
    for (const auto& [k, c] : p.terms()) v = std::min(v, k.t);
    return v;
}

int max_time_degree(const OperatorPoly& p) {
    if (p.is_zero()) return 0;
    int v = 0;
    for (const auto& [k, c] : p.terms()) v = std::max(v, k.t);
    return v;
}

OperatorPoly shift_time_down(const OperatorPoly& p, int k) {
    if (k == 0) return p;
    OperatorPoly r;
    for (const auto& [key, c] : p.terms()) {
        if (key.t < k) raise(ErrorKind::Internal, "time degree underflow in shift_time_down");
        r.add_term(OpKey{key.t - k, key.z}, c);
    }
    return r;
}

LaurentPoly time_coeff(const OperatorPoly& p, int k) {
    LaurentPoly r;
    for (const auto& [key, c] : p.terms())
        if (key.t == k) r.add_term(key.z, c);
    return r;
}

namespace {

void append_space(std::ostringstream& os, const SpaceExp& z) {
    static const char* names[3] = {"x", "y", "w"};
    for (int k = 0; k < 3; ++k) {
        if (z[k] == 0) continue;
        os << names[k];
        if (z[k] != 1) os << "^" << z[k];
    }
}

}  // namespace

std::string to_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [z, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "[" << c.str() << "]";
        if (z != SpaceExp{0, 0, 0}) {
            os << "*";
            append_space(os, z);
        }
    }
    return os.str();
}

std::string to_string(const OperatorPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [key, c] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "[" << c.str() << "]";
        if (key.t != 0) {
            os << "*z";
            if (key.t != 1) os << "^" << key.t;
        }
        if (key.z != SpaceExp{0, 0, 0}) {
            os << "*";
            append_space(os, key.z);
        }
    }
    return os.str();
}

}  // namespace lbmfd
