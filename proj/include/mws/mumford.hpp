#pragma once
#include <optional>

#include "mws/poly.hpp"

namespace mws {

// y^2 = f(x) with f monic of degree 2g + 1 over the coefficient field K.
template <class K>
struct Model {
  K k;
  int genus = 0;
  Poly<K> f;
};

// A divisor class in Mumford form: u monic, deg v < deg u <= genus,
// u | v^2 - f.  The identity is (1, 0).
template <class K>
struct Mumford {
  Poly<K> u, v;

  bool is_identity() const { return u.deg() == 0; }
};

template <class K>
bool operator==(const Mumford<K>& a, const Mumford<K>& b) {
  return a.u == b.u && a.v == b.v;
}

template <class K>
Mumford<K> identity(const Model<K>& m) {
  return {poly_one(m.k), poly_zero(m.k)};
}

// Reduced-divisor validity; throws InvalidDivisor with a reason.
template <class K>
void validate_divisor(const Model<K>& m, const Mumford<K>& d) {
  if (d.u.is_zero() || !K::eq(d.u.lc(), m.k.one()))
    throw InvalidDivisor("u must be monic");
  if (d.u.deg() > m.genus) throw InvalidDivisor("deg u exceeds the genus");
  if (!d.v.is_zero() && d.v.deg() >= d.u.deg())
    throw InvalidDivisor("deg v must be below deg u");
  if (!((d.v * d.v - m.f) % d.u).is_zero())
    throw InvalidDivisor("u does not divide v^2 - f");
}

template <class K>
bool divisor_ok(const Model<K>& m, const Mumford<K>& d) {
  try {
    validate_divisor(m, d);
    return true;
  } catch (const InvalidDivisor&) {
    return false;
  }
}

template <class K>
Mumford<K> neg(const Model<K>& m, const Mumford<K>& d) {
  (void)m;
  return {d.u, -d.v};
}

// Class of (x0, y0) - infinity; throws NotOnCurve.
template <class K>
Mumford<K> albanese(const Model<K>& m, const typename K::Elem& x0, const typename K::Elem& y0) {
  if (!K::eq(K::mul(y0, y0), eval(m.f, x0))) throw NotOnCurve("y0^2 != f(x0)");
  Poly<K> u = poly_of(m.k, {K::neg(x0), m.k.one()});
  return {u, poly_const(m.k, y0)};
}

// Cantor's algorithm: composition then reduction.  Inputs must be reduced
// divisors on the same model; the result is reduced.
template <class K>
Mumford<K> cantor_add(const Model<K>& m, const Mumford<K>& a, const Mumford<K>& b) {
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;

  // composition
  auto [d1, e1, e2] = poly_xgcd(a.u, b.u);                 // d1 = e1 u1 + e2 u2
  auto [d, c1, c2] = poly_xgcd(d1, a.v + b.v);             // d = c1 d1 + c2 (v1+v2)
  Poly<K> s1 = c1 * e1, s2 = c1 * e2, s3 = c2;
  Poly<K> u = div_exact(a.u * b.u, d * d);
  Poly<K> num = s1 * (a.u * b.v) + s2 * (b.u * a.v) + s3 * (a.v * b.v + m.f);
  Poly<K> v = div_exact(num, d) % u;

  // reduction
  while (u.deg() > m.genus) {
    Poly<K> u2 = div_exact(m.f - v * v, u);
    u = monic(u2);
    v = (-v) % u;
  }
  return {u, v};
}

template <class K>
Mumford<K> scalar_mul(const Model<K>& m, long long n, const Mumford<K>& d) {
  Mumford<K> base = d;
  if (n < 0) {
    base = neg(m, base);
    n = -n;
  }
  Mumford<K> acc = identity(m);
  while (n) {
    if (n & 1) acc = cantor_add(m, acc, base);
    base = cantor_add(m, base, base);
    n >>= 1;
  }
  return acc;
}

// Smallest k in [1, bound] with k*d = 0, if any.
template <class K>
std::optional<uint64_t> divisor_order_up_to(const Model<K>& m, const Mumford<K>& d,
                                            uint64_t bound) {
  Mumford<K> acc = d;
  for (uint64_t k = 1; k <= bound; ++k) {
    if (acc.is_identity()) return k;
    acc = cantor_add(m, acc, d);
  }
  return std::nullopt;
}

}  // namespace mws
