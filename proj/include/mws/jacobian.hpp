#pragma once
#include <memory>
#include <unordered_map>
#include <vector>

#include "mws/curve.hpp"
#include "mws/mumford.hpp"
#include "mws/snf.hpp"

namespace mws {

using FpModel = Model<FpCtx>;
using QModel = Model<QCtx>;

QModel model_q(const CurveSpec& c);

// Reduction of the model at a good odd prime; throws BadPrime otherwise.
FpModel model_mod(const CurveSpec& c, uint64_t p);

// Divisors are packed into 64-bit keys (2 deg(u) base-p digits plus the
// degree); requires p^{2g} (g+1) < 2^63, checked here.
void require_packable(const FpModel& m);
uint64_t divisor_key(const FpModel& m, const Mumford<FpCtx>& d);
Mumford<FpCtx> divisor_from_key(const FpModel& m, uint64_t key);

// #J(F_p) from the zeta function for genus 1 and 2; checks integrality
// and the Weil interval (InconsistentCounts), UnsupportedGenus above 2.
uint64_t order_via_zeta(const PointCounts& n);

// Every reduced divisor (u, v) over F_p.  Genus 1 and 2 are enumerated in
// O(p^2) by orbit type; higher genus falls back to scanning coefficient
// space.  Throws TooLarge when the expected size (or scan cost) exceeds
// the guard.
std::vector<Mumford<FpCtx>> enumerate_jacobian(const CurveSpec& c, uint64_t p,
                                               uint64_t guard = 1000000);

// Albanese image of C(F_p) in the Jacobian, as packed keys (size N1;
// infinity maps to the identity).
std::vector<uint64_t> curve_image_keys(const CurveSpec& c, uint64_t p);

// J(F_p) as an explicit abelian group: invariant factors n_1 | ... | n_s
// (nontrivial ones only), a basis realizing them, and discrete logs for
// every element via a canonical index in mixed radix over the factors.
struct GroupStructure {
  FpModel model;
  uint64_t p = 0;
  uint64_t order = 1;
  uint64_t exponent = 1;
  std::vector<uint64_t> invariant_factors;
  std::vector<Mumford<FpCtx>> basis;

  std::unordered_map<uint64_t, uint32_t> canon_of_key;
  std::vector<uint64_t> key_of_canon;

  uint64_t canonical_index(const Mumford<FpCtx>& d) const;  // InvalidDivisor if absent
  std::vector<uint64_t> dl(const Mumford<FpCtx>& d) const;
  uint64_t flatten(const std::vector<uint64_t>& digits) const;
  std::vector<uint64_t> unflatten(uint64_t idx) const;
};

GroupStructure group_structure(const CurveSpec& c, uint64_t p, uint64_t guard = 1000000);

// Coefficient-wise reduction of a rational divisor at a good prime.
// Throws DenominatorAtP when p divides a denominator, InvalidReduction
// when the reduced pair fails validity.
Mumford<FpCtx> reduce_divisor(const CurveSpec& c, const Mumford<QCtx>& d, uint64_t p);

}  // namespace mws
