#pragma once
#include <cstdint>
#include <utility>
#include <vector>

#include "mws/errors.hpp"

namespace mws {

// Prime factorization of a positive 64-bit integer, primes increasing.
struct Factorization {
  uint64_t n = 1;
  std::vector<std::pair<uint64_t, int>> factors;  // (prime, exponent)

  uint64_t max_prime() const { return factors.empty() ? 1 : factors.back().first; }
};

// Deterministic pipeline: trial division below 10^4, then Miller-Rabin +
// Brent's rho with a fixed retry schedule.  Throws FactorizationFailure if
// the budget is exhausted (never observed for inputs in this project's
// range, but the failure mode is explicit rather than a silent loop).
Factorization factorize(uint64_t n);

// Largest prime factor <= B?  (1 is B-smooth for every B >= 1.)
bool is_smooth(uint64_t n, double B);

}  // namespace mws
