#pragma once

#include <stdexcept>
#include <string>

namespace lbmfd {

// Every failure the library can signal, tagged so callers can dispatch
// without string matching.
enum class ErrorKind {
    MalformedCoefficient,  // zero denominator and friends
    Pole,                  // limit does not exist
    History,               // not enough stored time levels
    Binding,               // unbound parameter at specialization time
    Elimination,           // time derivative at order Dx^0 beyond the leading one
    Inversion,             // non-invertible matrix where an inverse is required
    Conservation,          // nonzero Dx^0 term in a developed equation
    Validation,            // scheme fails its structural checks
    Parse,                 // scheme file / expression syntax
    Usage,                 // CLI misuse
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace lbmfd
