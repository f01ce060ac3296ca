#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mws/cache.hpp"
#include "mws/genset.hpp"
#include "mws/jacobian.hpp"

namespace mws {

// Synthetic replacement for the curve image at p, given as packed divisor
// keys.  Returning nullopt keeps the genuine Albanese image.  Used by the
// random-subset experiments and by synthetic obstruction fixtures.
using ImageOverride = std::function<std::optional<std::vector<uint64_t>>(uint64_t p)>;

// Everything the sieve knows at one good prime p.  The structure is held
// by shared pointer so runs, trials, and reports can share one copy.
struct PrimeLocalData {
  uint64_t p = 0;
  std::shared_ptr<const GroupStructure> structure;
  // phi[j][i] = digit i (mod invariant factor n_i) of free generator j's
  // image under dl — column j of the exponent matrix.
  std::vector<std::vector<uint64_t>> phi;
  // dl digits of every element of the torsion subgroup's image, deduplicated;
  // always contains the identity (the all-zero vector).
  std::vector<std::vector<uint64_t>> torsion_dl;
  // Flattened dl of the curve image, sorted and unique; size n1.
  std::vector<uint64_t> curve_image;
  uint64_t order = 1;
  uint64_t exponent = 1;
  int64_t n1 = 0;
};

// Builds the local picture at p.  Throws SkipPrime wrapping DenominatorAtP,
// FactorizationFailure, TooLarge, or InvalidReduction — a skipped prime just
// shrinks the usable set S.  Bad reduction violates the precondition and
// surfaces as BadPrime.  When a store is supplied, the structure's order is
// cross-checked against the independently computed zeta order.
PrimeLocalData local_data(const CurveSpec& curve, const GeneratorSet& gens, uint64_t p,
                          OrderStore* store = nullptr, uint64_t structure_guard = 1000000,
                          const ImageOverride& image_override = nullptr);

// Residue classes of generator exponents that are still consistent with a
// rational point, represented in (Z/M)^r with M the lcm of local exponents.
struct SieveState {
  std::size_t rank = 0;
  mpz_class modulus = 1;
  std::vector<std::vector<mpz_class>> survivors;  // tuples in [0, modulus)^rank
  std::vector<uint64_t> primes_used;
};

SieveState initial_state(std::size_t rank);

// Per-prime accounting, kept in the report (and usable as a certificate
// line: p, order, invariant factors, N1).
struct StepStats {
  uint64_t p = 0;
  uint64_t order = 1;
  uint64_t exponent = 1;
  std::vector<uint64_t> invariants;
  int64_t n1 = 0;
  mpz_class modulus_after = 1;
  std::size_t survivors_before = 0;
  std::size_t candidates = 0;
  std::size_t survivors_after = 0;
  double elimination_ratio = 0.0;  // 1 - survivors_after/candidates
};

enum class Verdict { Obstructed, Inconclusive };

struct SkipRecord {
  uint64_t p = 0;
  std::string reason;
};

struct SieveReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<uint64_t> primes_used;  // S actually consumed, in order
  std::vector<SkipRecord> skipped;
  mpz_class modulus = 1;
  std::vector<std::vector<mpz_class>> survivors;
  std::vector<StepStats> steps;
};

// Raised when a step's candidate count would exceed the survivor cap — a
// first-class outcome meaning "choose smoother primes".  run_scharaschkin
// attaches the partial report before rethrowing.
struct StateExplosion : Error {
  using Error::Error;
  std::shared_ptr<SieveReport> partial;
};

// One refinement of the state by one prime's local data.  The new modulus is
// lcm(M, exponent); surviving classes are those lifts whose image (shifted
// by every torsion image in turn) meets the curve image.
SieveState sieve_step(const SieveState& st, const PrimeLocalData& data,
                      std::size_t survivor_cap = 1000000, StepStats* stats = nullptr);

// All good primes p <= B^2 whose Jacobian order is B-smooth, increasing,
// truncated at cap.  Primes whose order resists factorization are skipped.
std::vector<uint64_t> select_primes(const CurveSpec& curve, double B, std::size_t cap = 64,
                                    OrderStore* store = nullptr);

struct SieveOptions {
  double B = 0;                  // used when primes is empty
  std::vector<uint64_t> primes;  // explicit list, consumed in the given order
  std::size_t max_primes = 64;
  std::size_t survivor_cap = 1000000;
  uint64_t structure_guard = 1000000;
  CacheStore* cache = nullptr;   // ignored when store is supplied
  OrderStore* store = nullptr;   // reusable per-curve workspace
  ImageOverride image_override;
};

// Folds sieve_step over the selected primes; Obstructed{S} the first time
// the survivor set empties, else Inconclusive with final statistics.
SieveReport run_scharaschkin(const CurveSpec& curve, const GeneratorSet& gens,
                             const SieveOptions& opts);

// Independent re-verification: enumerates the image of the given group in
// prod_{p in S} J(F_p) by direct Cantor sums on packed keys (no dl
// machinery) and intersects with the product of curve images.  True iff
// the intersection is empty; S = [] gives false.  Throws TooLarge when the
// image group exceeds cap.
bool certify(const CurveSpec& curve, const GeneratorSet& gens,
             const std::vector<uint64_t>& primes, uint64_t cap = 1000000,
             const ImageOverride& image_override = nullptr);

}  // namespace mws
