#include "lbmfd/diffop.hpp"

#include <sstream>

namespace lbmfd {

std::string DiffOp::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << c.str() << "]";
        if (k == DKey{}) continue;
        if (k.dt > 0) {
            os << "*dt";
            if (k.dt > 1) os << "^" << k.dt;
        }
        static const char* ax[3] = {"dx", "dy", "dw"};
        for (size_t a = 0; a < 3; ++a)
            if (k.dx[a] > 0) {
                os << "*" << ax[a];
                if (k.dx[a] > 1) os << "^" << k.dx[a];
            }
    }
    return os.str();
}

std::string DiffOp::latex() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        bool coeff_is_one = c.is_one();
        if (!coeff_is_one || k == DKey{}) os << c.latex();
        if (k == DKey{}) continue;
        if (!coeff_is_one) os << " \\, ";
        if (k.dt > 0) {
            os << "\\partial_t";
            if (k.dt > 1) os << "^{" << k.dt << "}";
        }
        static const char* ax[3] = {"x", "y", "z"};
        for (size_t a = 0; a < 3; ++a)
            if (k.dx[a] > 0) {
                os << "\\partial_{" << ax[a] << "}";
                if (k.dx[a] > 1) os << "^{" << k.dx[a] << "}";
            }
    }
    return os.str();
}

}  // namespace lbmfd
