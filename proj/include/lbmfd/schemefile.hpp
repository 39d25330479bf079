#pragma once

#include <map>
#include <string>

#include "lbmfd/scheme.hpp"

namespace lbmfd {

// Declarative scheme description. Line-oriented, '#' comments, versioned
// header. Example:
//
//   lbm-scheme v1
//   dimension: 1
//   velocities: (1) (-1)
//   lattice_speed: lambda
//   conserved: 1
//   moments:
//     1 1
//     lambda -lambda
//   relaxation: 0 s2
//   equilibrium m2: C*m1
//   parameter C: 1/2
//   parameter s2: 3/2
//   parameter lambda: 1
//
// Moment-matrix entries are whitespace-separated expressions (no spaces
// inside an entry). Equilibria are given for the non-conserved moments only;
// the conserved ones are fixed by conservation. Every identifier used in an
// expression must be declared: the lattice_speed symbol, a relaxation
// symbol, or a `parameter` line. Parameter bindings are optional and feed
// the numeric commands.
struct SchemeDocument {
    LBMScheme scheme;
    std::map<Param, Rational> bindings;
    std::string lattice_speed_name;  // empty when lattice_speed is a number
};

SchemeDocument parse_scheme_file(const std::string& path);
SchemeDocument parse_scheme_text(const std::string& text, const std::string& origin = "<string>");

// Canonical text form; parse(serialize(doc)) reproduces the document.
std::string serialize_scheme(const SchemeDocument& doc);

}  // namespace lbmfd
