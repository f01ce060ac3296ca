#pragma once
#include <cassert>
#include <cstdint>

namespace mws {

// Counter-based generator (splitmix64 finalizer over a keyed counter).
// Streams are keyed by (seed, trial, prime), so every draw is reproducible
// and independent of execution order and parallelism.
class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t trial, uint64_t prime)
      : state_(finalize(seed + 0x9e3779b97f4a7c15ULL * (trial + 1) +
                        0xbf58476d1ce4e5b9ULL * (prime + 1))) {}

  uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return finalize(state_);
  }

  // Uniform in [0, n), unbiased via rejection.
  uint64_t below(uint64_t n) {
    assert(n > 0);
    uint64_t lim = (UINT64_MAX / n) * n;
    uint64_t r;
    do {
      r = next();
    } while (r >= lim);
    return r % n;
  }

 private:
  static uint64_t finalize(uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

  uint64_t state_;
};

}  // namespace mws
