#pragma once
#include <cassert>
#include <cstdint>
#include <optional>

#include "mws/errors.hpp"
#include "mws/nt.hpp"

namespace mws {

// An element of F_p for an odd prime p.  Elements carry their modulus so
// mixed-modulus arithmetic is caught immediately; p stays well below 2^31
// in practice, so products fit in 64 bits via __int128 in mulmod.
class Fp {
 public:
  Fp() : v_(0), p_(0) {}  // unusable sentinel; any arithmetic on it asserts
  Fp(uint64_t value, uint64_t p) : v_(value), p_(p) { assert(p >= 2 && value < p); }

  static Fp from_int(long long x, uint64_t p) {
    long long r = x % static_cast<long long>(p);
    if (r < 0) r += static_cast<long long>(p);
    return Fp(static_cast<uint64_t>(r), p);
  }

  uint64_t value() const { return v_; }
  uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(Fp a, Fp b) {
    assert(a.p_ == b.p_ && a.p_ != 0);
    uint64_t s = a.v_ + b.v_;
    if (s >= a.p_) s -= a.p_;
    return Fp(s, a.p_);
  }
  friend Fp operator-(Fp a, Fp b) {
    assert(a.p_ == b.p_ && a.p_ != 0);
    return Fp(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_);
  }
  friend Fp operator*(Fp a, Fp b) {
    assert(a.p_ == b.p_ && a.p_ != 0);
    return Fp(mulmod(a.v_, b.v_, a.p_), a.p_);
  }
  Fp operator-() const {
    assert(p_ != 0);
    return Fp(v_ == 0 ? 0 : p_ - v_, p_);
  }
  friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.p_ == b.p_; }
  friend bool operator!=(Fp a, Fp b) { return !(a == b); }

  Fp pow(uint64_t e) const { return Fp(powmod(v_, e, p_), p_); }

 private:
  uint64_t v_, p_;
};

// Throws ZeroInverse on zero input.
Fp inv(Fp a);

// Legendre symbol (a/p) in {-1, 0, 1}; p an odd prime.
int legendre(uint64_t a, uint64_t p);

// Smallest quadratic nonresidue mod p (p an odd prime).
uint64_t smallest_nonresidue(uint64_t p);

// Square root in F_p via Tonelli-Shanks; returns the smaller of the two
// roots, or nullopt when a is a nonsquare.  sqrt(0) = 0.
std::optional<Fp> fp_sqrt(Fp a);

// Checks p odd prime in the supported range; throws BadPrime otherwise.
void require_odd_prime(uint64_t p);

// F_{p^2} realized as F_p[t]/(t^2 - n) with n the smallest nonresidue.
// Elements are a + b t and carry (p, n).
class Fp2 {
 public:
  Fp2() : n_(0) {}
  Fp2(Fp a, Fp b, uint64_t n) : a_(a), b_(b), n_(n) {}
  static Fp2 scalar(Fp a, uint64_t n) { return Fp2(a, Fp(0, a.modulus()), n); }

  Fp a() const { return a_; }
  Fp b() const { return b_; }
  uint64_t n() const { return n_; }
  uint64_t p() const { return a_.modulus(); }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool in_base_field() const { return b_.is_zero(); }

  friend Fp2 operator+(const Fp2& x, const Fp2& y) {
    assert(x.n_ == y.n_);
    return Fp2(x.a_ + y.a_, x.b_ + y.b_, x.n_);
  }
  friend Fp2 operator-(const Fp2& x, const Fp2& y) {
    assert(x.n_ == y.n_);
    return Fp2(x.a_ - y.a_, x.b_ - y.b_, x.n_);
  }
  friend Fp2 operator*(const Fp2& x, const Fp2& y) {
    assert(x.n_ == y.n_);
    Fp n(x.n_ % x.p(), x.p());
    return Fp2(x.a_ * y.a_ + n * (x.b_ * y.b_), x.a_ * y.b_ + x.b_ * y.a_, x.n_);
  }
  Fp2 operator-() const { return Fp2(-a_, -b_, n_); }
  friend bool operator==(const Fp2& x, const Fp2& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.n_ == y.n_;
  }
  friend bool operator!=(const Fp2& x, const Fp2& y) { return !(x == y); }

  Fp2 conj() const { return Fp2(a_, -b_, n_); }
  Fp norm() const { return a_ * a_ - Fp(n_ % p(), p()) * (b_ * b_); }  // x * conj(x)
  Fp2 pow(uint64_t e) const;

 private:
  Fp a_, b_;
  uint64_t n_;
};

Fp2 inv(const Fp2& x);  // throws ZeroInverse on zero

// Square root in F_{p^2}; nullopt when x is a nonsquare there.
std::optional<Fp2> fp2_sqrt(const Fp2& x);

}  // namespace mws
