#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <cstddef>
#include <vector>

#include "mws/cache.hpp"
#include "mws/curve.hpp"
#include "mws/dickman.hpp"
#include "mws/genset.hpp"
#include "mws/sieve.hpp"

namespace mws {

// Finite-B smoothness statistics: over the good primes p <= B, how often is
// #J(F_p) itself B^u-smooth?  The Dickman value rho(g/u) is attached as the
// baseline for a typical integer of size p^g <= B^g.
struct SmoothnessStats {
  uint64_t curve_id = 0;
  double B = 0;
  double u = 0;
  std::size_t total = 0;    // good primes p <= B
  std::size_t smooth = 0;   // of those, #J(F_p) is B^u-smooth
  std::size_t skipped = 0;  // orders that resisted factorization
  double fraction = 0;      // smooth / (total - skipped)
  double rho_baseline = 0;  // rho(g/u), 0 when g/u is beyond the table
};

SmoothnessStats smooth_fraction(const CurveSpec& curve, double B, double u,
                                OrderStore* store = nullptr);

// L = lcm of the local orders, with the finite form of the smoothness bound:
// whenever every order is B-smooth, L divides prod_{q <= B} q^floor(log_q
// M_max) with M_max the largest order, so log L <= pi(B) log M_max.
struct LcmBound {
  mpz_class L = 1;
  double log_L = 0;
  double B = 0;
  std::size_t pi_B = 0;    // primes q <= B
  uint64_t m_max = 1;      // largest order
  double bound_log = 0;    // pi(B) * log(m_max)
  bool divides = false;    // the divisibility assertion, checked exactly
};

LcmBound lcm_of_orders(const std::vector<uint64_t>& primes,
                       const std::vector<uint64_t>& orders, double B);

// Monte Carlo estimate of the probability that the image of the given
// subgroup meets prod_p C(F_p) when each C(F_p) is replaced by a uniform
// random subset of J(F_p) of the same size N1_p, independently per prime
// and per trial.
struct TrialEstimate {
  double B = 0;
  std::vector<uint64_t> primes;  // S actually used, in order
  std::size_t trials = 0;
  std::size_t hits = 0;
  double estimate = 0;    // hits / trials
  double log_I_bound = 0;  // r * log L, L = lcm of the orders
  double log_P = 0;        // sum_p log(N1_p / #J(F_p))
};

// kFullGroup forces every random subset to the whole group (certain
// intersection) -- a plumbing check, not a model.
enum class SubsetMode { kCurveSized, kFullGroup };

struct EstimateOptions {
  std::vector<uint64_t> primes;  // explicit S; selected from B when empty
  std::size_t max_primes = 64;
  std::size_t survivor_cap = 1000000;
  uint64_t structure_guard = 1000000;
  SubsetMode mode = SubsetMode::kCurveSized;
  OrderStore* store = nullptr;   // reusable per-curve workspace
  CacheStore* cache = nullptr;   // ignored when store is supplied
};

// Subset draws are keyed by (seed, trial, p), so estimates across nested
// prime sets are coupled: a hit against the larger set implies a hit
// against the smaller one on the same (seed, trial).
TrialEstimate estimate_intersection_prob(const CurveSpec& curve, const GeneratorSet& gens,
                                         double B, std::size_t trials, uint64_t seed,
                                         const EstimateOptions& opts = {});

}  // namespace mws
