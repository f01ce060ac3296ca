#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "mws/poly.hpp"

namespace mws {

// A hyperelliptic curve y^2 = f(x) over Q with f monic of odd degree
// 2g + 1 and squarefree; there is a single point at infinity.
struct CurveSpec {
  std::vector<long long> f;  // coefficients, constant term first
  int genus = 0;
  mpz_class disc;            // nonzero discriminant of f
  uint64_t id = 0;           // stable hash of the coefficient vector

  // Validates monic / odd degree >= 3 / squarefree; throws ParseError.
  static CurveSpec from_coeffs(const std::vector<long long>& coeffs);
};

Poly<QCtx> curve_poly_q(const CurveSpec& c);

// f mod p (p an odd prime; reduction may be bad, callers gate on
// good_reduction when it matters).
Poly<FpCtx> curve_poly_mod(const CurveSpec& c, uint64_t p);

// Good reduction at p: p odd, p does not divide disc(f).
bool good_reduction(const CurveSpec& c, uint64_t p);

// A point of C(F_p): affine (x, y) or the point at infinity.
struct AffinePoint {
  bool at_infinity = false;
  Fp x, y;
  static AffinePoint infinity() { return AffinePoint{true, {}, {}}; }
  static AffinePoint xy(Fp x, Fp y) { return AffinePoint{false, x, y}; }
};

// All points of C(F_p) including infinity, via square roots column by
// column; deterministic order (infinity, then x increasing, y increasing).
std::vector<AffinePoint> enumerate_points(const CurveSpec& c, uint64_t p);

// #C(F_p) via quadratic-character column sums.
uint64_t count_points(const CurveSpec& c, uint64_t p);

// #C(F_{p^2}) via the quadratic character of F_{p^2} composed with the
// norm; loops over conjugate pairs once.
uint64_t count_points_ext(const CurveSpec& c, uint64_t p);

struct PointCounts {
  uint64_t p = 0;
  uint64_t N1 = 0, N2 = 0;
  int genus = 0;
};

// Both counts; validates the Weil bounds (throws InconsistentCounts).
PointCounts point_counts(const CurveSpec& c, uint64_t p);

// |p + 1 - N1| <= 2g sqrt(p) and |p^2 + 1 - N2| <= 2g p, checked with
// exact integer arithmetic.
void validate_counts(const PointCounts& n);

}  // namespace mws
