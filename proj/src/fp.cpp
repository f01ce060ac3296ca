#include "mws/fp.hpp"

#include <string>

namespace mws {

void require_odd_prime(uint64_t p) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
    throw BadPrime("modulus " + std::to_string(p) + " is not an odd prime");
  if (p > (uint64_t(1) << 31))
    throw BadPrime("modulus " + std::to_string(p) + " exceeds the supported range");
}

Fp inv(Fp a) {
  if (a.is_zero()) throw ZeroInverse("inverse of 0 mod " + std::to_string(a.modulus()));
  return Fp(invmod(a.value(), a.modulus()), a.modulus());
}

int legendre(uint64_t a, uint64_t p) {
  a %= p;
  if (a == 0) return 0;
  uint64_t r = powmod(a, (p - 1) / 2, p);
  return r == 1 ? 1 : -1;
}

uint64_t smallest_nonresidue(uint64_t p) {
  for (uint64_t n = 2; n < p; ++n)
    if (legendre(n, p) == -1) return n;
  throw BadPrime("no nonresidue mod " + std::to_string(p));
}

std::optional<Fp> fp_sqrt(Fp a) {
  const uint64_t p = a.modulus();
  if (a.is_zero()) return a;
  if (legendre(a.value(), p) != 1) return std::nullopt;

  uint64_t r;
  if (p % 4 == 3) {
    r = powmod(a.value(), (p + 1) / 4, p);
  } else {
    // Tonelli-Shanks.  p - 1 = q * 2^s with q odd.
    uint64_t q = p - 1, s = 0;
    while (q % 2 == 0) q /= 2, ++s;
    uint64_t z = powmod(smallest_nonresidue(p), q, p);  // order 2^s
    uint64_t m = s;
    uint64_t c = z;
    uint64_t t = powmod(a.value(), q, p);
    r = powmod(a.value(), (q + 1) / 2, p);
    while (t != 1) {
      uint64_t i = 0, tt = t;
      while (tt != 1) {
        tt = mulmod(tt, tt, p);
        ++i;
      }
      uint64_t b = c;
      for (uint64_t j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
      m = i;
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      r = mulmod(r, b, p);
    }
  }
  if (r > p - r) r = p - r;
  return Fp(r, p);
}

Fp2 Fp2::pow(uint64_t e) const {
  Fp2 r = Fp2::scalar(Fp(1, p()), n_);
  Fp2 base = *this;
  while (e) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Fp2 inv(const Fp2& x) {
  if (x.is_zero()) throw ZeroInverse("inverse of 0 in F_p^2, p=" + std::to_string(x.p()));
  Fp ninv = inv(x.norm());
  Fp2 c = x.conj();
  return Fp2(c.a() * ninv, c.b() * ninv, x.n());
}

// Solve y^2 = x by splitting into components: for y = c + d t,
//   c^2 + n d^2 = a  and  2 c d = b,
// which pins c^2 = (a +- N)/2 with N^2 = Norm(x) = a^2 - n b^2.
std::optional<Fp2> fp2_sqrt(const Fp2& x) {
  const uint64_t p = x.p();
  const Fp zero(0, p);
  if (x.is_zero()) return x;

  if (x.in_base_field()) {
    Fp a = x.a();
    if (auto c = fp_sqrt(a)) return Fp2(*c, zero, x.n());
    // a nonsquare in F_p: a = n * (a/n) with a/n a square, so y = d t.
    Fp an = a * inv(Fp(x.n() % p, p));
    Fp d = *fp_sqrt(an);
    return Fp2(zero, d, x.n());
  }

  auto norm_root = fp_sqrt(x.norm());
  if (!norm_root) return std::nullopt;  // nonsquare in F_{p^2}
  Fp N = *norm_root;
  Fp half = inv(Fp(2, p));
  // Exactly one of (a+N)/2, (a-N)/2 is a nonzero square (their product is
  // n b^2 / 4, a nonsquare) -- pick it.
  for (Fp cand : {(x.a() + N) * half, (x.a() - N) * half}) {
    auto c = fp_sqrt(cand);
    if (!c || c->is_zero()) continue;
    Fp d = x.b() * half * inv(*c);
    Fp2 y(*c, d, x.n());
    if (y * y == x) {
      if (std::pair(y.a().value(), y.b().value()) >
          std::pair((-y).a().value(), (-y).b().value()))
        y = -y;
      return y;
    }
  }
  return std::nullopt;
}

}  // namespace mws
