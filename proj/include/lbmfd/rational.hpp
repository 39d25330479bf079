#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "lbmfd/error.hpp"

namespace lbmfd {

// Exact rational arithmetic. GMP does the heavy lifting; we only add the
// small helpers the rest of the library needs.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) raise(ErrorKind::MalformedCoefficient, "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

inline Rational pow_rat(const Rational& base, long e) {
    if (e < 0) {
        if (is_zero(base)) raise(ErrorKind::MalformedCoefficient, "zero to a negative power");
        Rational inv(base.get_den(), base.get_num());
        inv.canonicalize();
        return pow_rat(inv, -e);
    }
    Rational acc(1), b(base);
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline double to_double(const Rational& r) { return r.get_d(); }

// Parses "p" or "p/q" with optional sign.
Rational rational_from_string(const std::string& s);

}  // namespace lbmfd
