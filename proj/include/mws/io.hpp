#pragma once
#include <string>
#include <vector>

#include "mws/curve.hpp"
#include "mws/genset.hpp"

namespace mws {

// Curve file: integer coefficients of f, constant term first, separated by
// whitespace (one or several lines); '#' starts a comment.  Example:
// "1 0 0 0 0 1" is y^2 = x^5 + 1.  Throws ParseError (with file:line),
// EvenDegree, or NotSquarefree.
CurveSpec parse_curve_file(const std::string& path);

// Generators file, one divisor per line ('#' comments, blank lines ok):
//   [torsion] point <x> <y>            class of (x, y) - infinity
//   [torsion] div <u0,u1,...> <v0,...> Mumford pair, constant term first,
//                                      "-" for the zero polynomial
// Coefficients are rationals in GMP syntax ("-383/1000").  Lines without
// the torsion prefix are free generators.
struct GensFile {
  std::vector<Mumford<QCtx>> free_gens;
  std::vector<Mumford<QCtx>> torsion_gens;
};

GensFile parse_gens_file(const std::string& path, const CurveSpec& curve);

// parse_gens_file + make_generator_set (validation and torsion closure).
GeneratorSet load_generator_set(const std::string& path, const CurveSpec& curve);

}  // namespace mws
