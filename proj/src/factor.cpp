#include "mws/factor.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mws/nt.hpp"

namespace mws {

uint64_t gcd_u64(uint64_t a, uint64_t b) { return std::gcd(a, b); }

uint64_t invmod(uint64_t a, uint64_t m) {
  a %= m;
  if (a == 0) throw ZeroInverse("invmod(0, " + std::to_string(m) + ")");
  // extended Euclid on (a, m); track x with a*x = r (mod m)
  int64_t x0 = 0, x1 = 1;
  uint64_t r0 = m, r1 = a;
  while (r1 != 0) {
    uint64_t q = r0 / r1;
    uint64_t r2 = r0 - q * r1;
    int64_t x2 = x0 - static_cast<int64_t>(q) * x1;
    r0 = r1;
    r1 = r2;
    x0 = x1;
    x1 = x2;
  }
  if (r0 != 1)
    throw ZeroInverse("invmod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
  int64_t x = x0 % static_cast<int64_t>(m);
  if (x < 0) x += static_cast<int64_t>(m);
  return static_cast<uint64_t>(x);
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1, s = 0;
  while (d % 2 == 0) d /= 2, ++s;
  // This witness set is deterministic for all n < 2^64.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (uint64_t r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<uint64_t> primes_up_to(uint64_t limit) {
  std::vector<uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> comp(limit + 1, false);
  for (uint64_t i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (uint64_t j = i * i; j <= limit; j += i) comp[j] = true;
  }
  return out;
}

namespace {

// Brent's cycle-finding variant of Pollard rho with a deterministic
// sequence of polynomial offsets.  Returns a nontrivial factor of n
// (n composite, odd, not a prime power handled by caller loop).
uint64_t brent_rho(uint64_t n) {
  for (uint64_t c = 1; c <= 64; ++c) {
    uint64_t x = 2, y = 2, d = 1;
    uint64_t power = 1, lam = 1;
    auto f = [&](uint64_t v) { return addmod(mulmod(v, v, n), c, n); };
    while (d == 1) {
      if (power == lam) {
        x = y;
        power *= 2;
        lam = 0;
      }
      // batch gcds in blocks of 64 for speed
      uint64_t q = 1;
      uint64_t ys = y;
      uint64_t steps = std::min<uint64_t>(64, power - lam);
      for (uint64_t i = 0; i < steps; ++i) {
        y = f(y);
        q = mulmod(q, x > y ? x - y : y - x, n);
      }
      lam += steps;
      d = std::gcd(q, n);
      if (d == n) {
        // back off one step at a time from ys
        d = 1;
        y = ys;
        while (d == 1) {
          y = f(y);
          d = std::gcd(x > y ? x - y : y - x, n);
        }
        break;
      }
    }
    if (d != n && d != 1) return d;
  }
  throw FactorizationFailure("rho budget exhausted for n=" + std::to_string(n));
}

void factor_rec(uint64_t n, std::vector<uint64_t>& primes) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    primes.push_back(n);
    return;
  }
  uint64_t d = brent_rho(n);
  factor_rec(d, primes);
  factor_rec(n / d, primes);
}

}  // namespace

Factorization factorize(uint64_t n) {
  if (n == 0) throw OutOfRange("factorize(0)");
  Factorization out;
  out.n = n;
  std::vector<uint64_t> primes;
  for (uint64_t p = 2; p <= 10000 && p * p <= n; p == 2 ? p = 3 : p += 2) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) {
    if (n <= 10000ull * 10000ull && !is_prime_u64(n)) {
      // cannot happen: all factors below 10^4 removed
      throw FactorizationFailure("inconsistent trial division state");
    }
    factor_rec(n, primes);
  }
  std::sort(primes.begin(), primes.end());
  for (uint64_t p : primes) {
    if (!out.factors.empty() && out.factors.back().first == p)
      ++out.factors.back().second;
    else
      out.factors.emplace_back(p, 1);
  }
  return out;
}

bool is_smooth(uint64_t n, double B) {
  if (n == 0) throw OutOfRange("is_smooth(0)");
  return static_cast<double>(factorize(n).max_prime()) <= B;
}

}  // namespace mws
