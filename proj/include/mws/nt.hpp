#pragma once
#include <cstdint>
#include <vector>

namespace mws {

// 64-bit modular helpers (moduli below 2^63, so __int128 products are safe).

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
  a %= m;
  b %= m;
  uint64_t s = a + b;
  if (s >= m || s < a) s -= m;
  return s;
}

inline uint64_t submod(uint64_t a, uint64_t b, uint64_t m) {
  a %= m;
  b %= m;
  return a >= b ? a - b : a + (m - b);
}

inline uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

uint64_t gcd_u64(uint64_t a, uint64_t b);

// Inverse of a modulo m (gcd(a, m) must be 1); throws ZeroInverse otherwise.
uint64_t invmod(uint64_t a, uint64_t m);

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime_u64(uint64_t n);

// All primes <= limit, increasing (simple Eratosthenes).
std::vector<uint64_t> primes_up_to(uint64_t limit);

}  // namespace mws
