#pragma once
#include <gmpxx.h>

#include <cassert>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mws/fp.hpp"

namespace mws {

// Coefficient contexts for the polynomial template.  A context carries
// whatever state the field needs (the prime for F_p, nothing for Q) and
// exposes a uniform element interface.

struct FpCtx {
  uint64_t p = 0;
  using Elem = Fp;
  Elem zero() const { return Fp(0, p); }
  Elem one() const { return Fp(1, p); }
  Elem from_int(long long v) const { return Fp::from_int(v, p); }
  static Elem add(const Elem& a, const Elem& b) { return a + b; }
  static Elem sub(const Elem& a, const Elem& b) { return a - b; }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem neg(const Elem& a) { return -a; }
  static Elem inv(const Elem& a) { return mws::inv(a); }
  static bool is_zero(const Elem& a) { return a.is_zero(); }
  static bool eq(const Elem& a, const Elem& b) { return a == b; }
  bool same(const FpCtx& o) const { return p == o.p; }
};

struct QCtx {
  using Elem = mpq_class;
  Elem zero() const { return mpq_class(0); }
  Elem one() const { return mpq_class(1); }
  Elem from_int(long long v) const { return mpq_class(static_cast<long>(v)); }
  static Elem add(const Elem& a, const Elem& b) { return a + b; }
  static Elem sub(const Elem& a, const Elem& b) { return a - b; }
  static Elem mul(const Elem& a, const Elem& b) { return a * b; }
  static Elem neg(const Elem& a) { return -a; }
  static Elem inv(const Elem& a) {
    if (a == 0) throw ZeroInverse("rational inverse of 0");
    return Elem(1) / a;
  }
  static bool is_zero(const Elem& a) { return a == 0; }
  static bool eq(const Elem& a, const Elem& b) { return a == b; }
  bool same(const QCtx&) const { return true; }
};

// Dense univariate polynomial, constant term first, trailing (leading)
// zeros stripped; the zero polynomial has an empty coefficient vector
// and degree -1.
template <class K>
struct Poly {
  K k;
  std::vector<typename K::Elem> c;

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  typename K::Elem coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c.size())) ? c[static_cast<size_t>(i)] : k.zero();
  }
  typename K::Elem lc() const {
    assert(!c.empty());
    return c.back();
  }
  void normalize() {
    while (!c.empty() && K::is_zero(c.back())) c.pop_back();
  }
};

template <class K>
Poly<K> poly_zero(const K& k) {
  return Poly<K>{k, {}};
}

template <class K>
Poly<K> poly_const(const K& k, typename K::Elem e) {
  Poly<K> r{k, {std::move(e)}};
  r.normalize();
  return r;
}

template <class K>
Poly<K> poly_one(const K& k) {
  return poly_const(k, k.one());
}

template <class K>
Poly<K> poly_x(const K& k) {
  return Poly<K>{k, {k.zero(), k.one()}};
}

template <class K>
Poly<K> poly_of(const K& k, std::vector<typename K::Elem> coeffs) {
  Poly<K> r{k, std::move(coeffs)};
  r.normalize();
  return r;
}

template <class K>
Poly<K> poly_of_ints(const K& k, const std::vector<long long>& coeffs) {
  std::vector<typename K::Elem> v;
  v.reserve(coeffs.size());
  for (long long x : coeffs) v.push_back(k.from_int(x));
  return poly_of(k, std::move(v));
}

template <class K>
bool operator==(const Poly<K>& a, const Poly<K>& b) {
  assert(a.k.same(b.k));
  if (a.c.size() != b.c.size()) return false;
  for (size_t i = 0; i < a.c.size(); ++i)
    if (!K::eq(a.c[i], b.c[i])) return false;
  return true;
}

template <class K>
Poly<K> operator+(const Poly<K>& a, const Poly<K>& b) {
  assert(a.k.same(b.k));
  Poly<K> r{a.k, {}};
  size_t n = std::max(a.c.size(), b.c.size());
  r.c.reserve(n);
  for (size_t i = 0; i < n; ++i) r.c.push_back(K::add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i))));
  r.normalize();
  return r;
}

template <class K>
Poly<K> operator-(const Poly<K>& a) {
  Poly<K> r{a.k, {}};
  r.c.reserve(a.c.size());
  for (const auto& e : a.c) r.c.push_back(K::neg(e));
  return r;
}

template <class K>
Poly<K> operator-(const Poly<K>& a, const Poly<K>& b) {
  return a + (-b);
}

template <class K>
Poly<K> operator*(const Poly<K>& a, const Poly<K>& b) {
  assert(a.k.same(b.k));
  if (a.is_zero() || b.is_zero()) return poly_zero(a.k);
  Poly<K> r{a.k, std::vector<typename K::Elem>(a.c.size() + b.c.size() - 1, a.k.zero())};
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = K::add(r.c[i + j], K::mul(a.c[i], b.c[j]));
  r.normalize();
  return r;
}

template <class K>
Poly<K> scale(const Poly<K>& a, const typename K::Elem& s) {
  Poly<K> r{a.k, {}};
  r.c.reserve(a.c.size());
  for (const auto& e : a.c) r.c.push_back(K::mul(e, s));
  r.normalize();
  return r;
}

// Multiply by x^k.
template <class K>
Poly<K> shift_up(const Poly<K>& a, int n) {
  if (a.is_zero()) return a;
  Poly<K> r{a.k, std::vector<typename K::Elem>(a.c.size() + static_cast<size_t>(n), a.k.zero())};
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i + static_cast<size_t>(n)] = a.c[i];
  return r;
}

// Euclidean division a = q*b + r with deg r < deg b.  b must be nonzero.
template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
  assert(a.k.same(b.k));
  if (b.is_zero()) throw ZeroInverse("polynomial division by zero");
  Poly<K> q = poly_zero(a.k);
  Poly<K> r = a;
  auto lbinv = K::inv(b.lc());
  while (!r.is_zero() && r.deg() >= b.deg()) {
    int d = r.deg() - b.deg();
    auto coef = K::mul(r.lc(), lbinv);
    Poly<K> term = shift_up(poly_const(a.k, coef), d);
    q = q + term;
    r = r - term * b;
  }
  return {q, r};
}

template <class K>
Poly<K> operator%(const Poly<K>& a, const Poly<K>& b) {
  return divmod(a, b).second;
}

template <class K>
Poly<K> operator/(const Poly<K>& a, const Poly<K>& b) {
  return divmod(a, b).first;
}

// Exact division; asserts remainder zero.
template <class K>
Poly<K> div_exact(const Poly<K>& a, const Poly<K>& b) {
  auto [q, r] = divmod(a, b);
  assert(r.is_zero());
  return q;
}

template <class K>
Poly<K> monic(const Poly<K>& a) {
  if (a.is_zero()) return a;
  return scale(a, K::inv(a.lc()));
}

// Monic gcd; gcd(0, 0) = 0, gcd(a, 0) = monic(a).
template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
  assert(a.k.same(b.k));
  while (!b.is_zero()) {
    Poly<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

// Extended gcd: returns (d, s, t) with s*a + t*b = d, d = poly_gcd(a, b).
// Zero arguments are handled explicitly (d stays monic or zero).
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> poly_xgcd(const Poly<K>& a, const Poly<K>& b) {
  assert(a.k.same(b.k));
  const K& k = a.k;
  if (a.is_zero() && b.is_zero()) return {poly_zero(k), poly_zero(k), poly_zero(k)};
  if (b.is_zero()) {
    auto linv = K::inv(a.lc());
    return {monic(a), poly_const(k, linv), poly_zero(k)};
  }
  if (a.is_zero()) {
    auto linv = K::inv(b.lc());
    return {monic(b), poly_zero(k), poly_const(k, linv)};
  }
  Poly<K> r0 = a, r1 = b;
  Poly<K> s0 = poly_one(k), s1 = poly_zero(k);
  Poly<K> t0 = poly_zero(k), t1 = poly_one(k);
  while (!r1.is_zero()) {
    auto [q, r2] = divmod(r0, r1);
    Poly<K> s2 = s0 - q * s1;
    Poly<K> t2 = t0 - q * t1;
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  auto linv = K::inv(r0.lc());
  return {scale(r0, linv), scale(s0, linv), scale(t0, linv)};
}

template <class K>
typename K::Elem eval(const Poly<K>& a, const typename K::Elem& x) {
  auto acc = a.k.zero();
  for (size_t i = a.c.size(); i-- > 0;) acc = K::add(K::mul(acc, x), a.c[i]);
  return acc;
}

template <class K>
Poly<K> derivative(const Poly<K>& a) {
  Poly<K> r{a.k, {}};
  for (int i = 1; i <= a.deg(); ++i) {
    auto mult = a.k.from_int(i);
    r.c.push_back(K::mul(a.c[static_cast<size_t>(i)], mult));
  }
  r.normalize();
  return r;
}

// Resultant of two polynomials over the field K via the Euclidean chain:
//   res(A, B) = (-1)^{deg A deg B} lc(B)^{deg A - deg R} res(B, R),  R = A mod B.
template <class K>
typename K::Elem resultant(Poly<K> a, Poly<K> b) {
  const K& k = a.k;
  if (a.is_zero() || b.is_zero()) return k.zero();
  auto acc = k.one();
  bool negate = false;
  while (b.deg() > 0) {
    Poly<K> r = a % b;
    if (r.is_zero()) return k.zero();
    if ((a.deg() % 2) && (b.deg() % 2)) negate = !negate;
    auto lcb = b.lc();
    int e = a.deg() - r.deg();
    for (int i = 0; i < e; ++i) acc = K::mul(acc, lcb);
    a = std::move(b);
    b = std::move(r);
  }
  // b is a nonzero constant: res(a, c) = c^{deg a}
  auto cb = b.lc();
  for (int i = 0; i < a.deg(); ++i) acc = K::mul(acc, cb);
  if (negate) acc = K::neg(acc);
  return acc;
}

}  // namespace mws
