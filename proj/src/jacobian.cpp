#include "mws/jacobian.hpp"

#include <cassert>
#include <cmath>
#include <string>

#include "mws/errors.hpp"

namespace mws {

QModel model_q(const CurveSpec& c) { return {QCtx{}, c.genus, poly_of_ints(QCtx{}, c.f)}; }

FpModel model_mod(const CurveSpec& c, uint64_t p) {
  if (!good_reduction(c, p))
    throw BadPrime("p=" + std::to_string(p) + " is a prime of bad reduction");
  return {FpCtx{p}, c.genus, poly_of_ints(FpCtx{p}, c.f)};
}

void require_packable(const FpModel& m) {
  unsigned __int128 cap = (static_cast<unsigned __int128>(1) << 63);
  unsigned __int128 v = static_cast<unsigned>(m.genus) + 1;
  for (int i = 0; i < 2 * m.genus; ++i) {
    v *= m.k.p;
    if (v >= cap) throw TooLarge("p^2g too large to pack divisors at p=" + std::to_string(m.k.p));
  }
}

uint64_t divisor_key(const FpModel& m, const Mumford<FpCtx>& d) {
  const uint64_t p = m.k.p;
  int du = d.u.deg();
  uint64_t val = 0;
  // 2 du digits, most significant first so we can fold: v padded to du, then u
  for (int i = du - 1; i >= 0; --i) val = val * p + d.v.coeff(i).value();
  uint64_t uval = 0;
  for (int i = du - 1; i >= 0; --i) uval = uval * p + d.u.coeff(i).value();
  uint64_t pd = 1;
  for (int i = 0; i < du; ++i) pd *= p;
  val = uval * pd + val;
  return val * (static_cast<uint64_t>(m.genus) + 1) + static_cast<uint64_t>(du);
}

Mumford<FpCtx> divisor_from_key(const FpModel& m, uint64_t key) {
  const uint64_t p = m.k.p;
  const uint64_t g1 = static_cast<uint64_t>(m.genus) + 1;
  int du = static_cast<int>(key % g1);
  uint64_t val = key / g1;
  std::vector<Fp> vc, uc;
  for (int i = 0; i < du; ++i) {
    vc.emplace_back(val % p, p);
    val /= p;
  }
  for (int i = 0; i < du; ++i) {
    uc.emplace_back(val % p, p);
    val /= p;
  }
  uc.emplace_back(1, p);  // monic lead
  return {poly_of(m.k, std::move(uc)), poly_of(m.k, std::move(vc))};
}

uint64_t order_via_zeta(const PointCounts& n) {
  validate_counts(n);
  const uint64_t p = n.p;
  __int128 order;
  if (n.genus == 1) {
    order = n.N1;
  } else if (n.genus == 2) {
    int64_t a1 = static_cast<int64_t>(p) + 1 - static_cast<int64_t>(n.N1);
    __int128 a2 = static_cast<__int128>(p) * p + 1 - static_cast<__int128>(n.N2);
    __int128 twice_e2 = static_cast<__int128>(a1) * a1 - a2;
    if (twice_e2 % 2 != 0)
      throw InconsistentCounts("zeta coefficients are not integral at p=" + std::to_string(p));
    __int128 e2 = twice_e2 / 2;
    order = 1 - a1 + e2 - static_cast<__int128>(p) * a1 + static_cast<__int128>(p) * p;
  } else {
    throw UnsupportedGenus("closed-form order only for genus <= 2 (got " +
                           std::to_string(n.genus) + ")");
  }
  // Weil interval (sqrt(p)-1)^2g <= #J <= (sqrt(p)+1)^2g, with float slack
  long double sp = sqrtl(static_cast<long double>(p));
  long double lo = powl(sp - 1, 2 * n.genus) * (1 - 1e-12L);
  long double hi = powl(sp + 1, 2 * n.genus) * (1 + 1e-12L);
  if (order < 1 || static_cast<long double>(order) < lo || static_cast<long double>(order) > hi)
    throw InconsistentCounts("group order outside the Weil interval at p=" + std::to_string(p));
  return static_cast<uint64_t>(order);
}

namespace {

// Genus-2 degree-2 divisors, by the factorization type of u.
void deg2_divisors(const FpModel& m, const std::vector<AffinePoint>& pts,
                   std::vector<Mumford<FpCtx>>& out) {
  const uint64_t p = m.k.p;
  const FpCtx& k = m.k;

  // (a) u = (x - x1)(x - x2), x1 != x2: a chord through two affine points.
  //     Iterating ordered pairs of point-list entries with x1 < x2 hits
  //     every sign combination exactly once.
  for (size_t i = 1; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      const auto& P = pts[i];
      const auto& Q = pts[j];
      if (P.x == Q.x) continue;
      Fp slope = (Q.y - P.y) * inv(Q.x - P.x);
      Fp c1 = slope;
      Fp c0 = P.y - slope * P.x;
      Poly<FpCtx> u = poly_of(k, {P.x * Q.x, -(P.x + Q.x), k.one()});
      Poly<FpCtx> v = poly_of(k, {c0, c1});
      out.push_back({u, v});
    }
  }

  // (b) u = (x - x0)^2: a point doubled, needs y != 0; the tangent line.
  Poly<FpCtx> fprime = derivative(m.f);
  for (size_t i = 1; i < pts.size(); ++i) {
    const auto& P = pts[i];
    if (P.y.is_zero()) continue;
    Fp c1 = eval(fprime, P.x) * inv(P.y + P.y);
    Fp c0 = P.y - c1 * P.x;
    Poly<FpCtx> u = poly_of(k, {P.x * P.x, -(P.x + P.x), k.one()});
    out.push_back({u, poly_of(k, {c0, c1})});
  }

  // (c) u irreducible: conjugate points over F_{p^2}.  alpha = c + d t with
  //     d in [1, (p-1)/2] picks one of each conjugate pair.
  uint64_t nr = smallest_nonresidue(p);
  Fp nrf(nr, p);
  for (uint64_t d = 1; d <= (p - 1) / 2; ++d) {
    Fp df(d, p);
    for (uint64_t cc = 0; cc < p; ++cc) {
      Fp cf(cc, p);
      Fp2 alpha(cf, df, nr);
      Fp2 fa = Fp2::scalar(Fp(0, p), nr);
      for (size_t i = m.f.c.size(); i-- > 0;) fa = fa * alpha + Fp2::scalar(m.f.c[i], nr);
      // u = minimal polynomial of alpha
      Poly<FpCtx> u = poly_of(k, {cf * cf - nrf * (df * df), -(cf + cf), k.one()});
      if (fa.is_zero()) {
        out.push_back({u, poly_zero(k)});  // u | f: a 2-torsion class
        continue;
      }
      auto beta = fp2_sqrt(fa);
      if (!beta) continue;
      // v(alpha) = beta with v = v0 + v1 x over F_p
      Fp v1 = beta->b() * inv(df);
      Fp v0 = beta->a() - v1 * cf;
      Poly<FpCtx> v = poly_of(k, {v0, v1});
      out.push_back({u, v});
      out.push_back({u, -v});
    }
  }
}

void naive_divisors(const FpModel& m, uint64_t guard, std::vector<Mumford<FpCtx>>& out) {
  const uint64_t p = m.k.p;
  // cost of the scan is sum_d p^{2d}; stop if it exceeds the square guard
  unsigned __int128 cost = 0, term = 1;
  for (int d = 1; d <= m.genus; ++d) {
    term *= p * p;
    cost += term;
  }
  if (cost > static_cast<unsigned __int128>(guard) * 100)
    throw TooLarge("naive divisor scan too expensive at p=" + std::to_string(p));

  for (int du = 1; du <= m.genus; ++du) {
    std::vector<uint64_t> digits(2 * static_cast<size_t>(du), 0);
    for (;;) {
      std::vector<Fp> uc, vc;
      for (int i = 0; i < du; ++i) uc.emplace_back(digits[static_cast<size_t>(i)], p);
      uc.emplace_back(1, p);
      for (int i = 0; i < du; ++i) vc.emplace_back(digits[static_cast<size_t>(du + i)], p);
      Mumford<FpCtx> d{poly_of(m.k, std::move(uc)), poly_of(m.k, std::move(vc))};
      if (((d.v * d.v - m.f) % d.u).is_zero()) out.push_back(d);
      // odometer
      size_t pos = 0;
      while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
      if (pos == digits.size()) break;
    }
  }
}

}  // namespace

std::vector<Mumford<FpCtx>> enumerate_jacobian(const CurveSpec& c, uint64_t p, uint64_t guard) {
  FpModel m = model_mod(c, p);
  require_packable(m);
  std::vector<Mumford<FpCtx>> out;
  if (c.genus <= 2) {
    uint64_t expected = order_via_zeta(point_counts(c, p));
    if (expected > guard)
      throw TooLarge("Jacobian order " + std::to_string(expected) + " exceeds guard " +
                     std::to_string(guard) + " at p=" + std::to_string(p));
    out.reserve(expected);
    out.push_back(identity(m));
    auto pts = enumerate_points(c, p);
    for (size_t i = 1; i < pts.size(); ++i)
      out.push_back(albanese(m, pts[i].x, pts[i].y));
    if (c.genus == 2) deg2_divisors(m, pts, out);
    if (out.size() != expected)
      throw InconsistentCounts("enumerated " + std::to_string(out.size()) +
                               " divisors but the zeta function gives " + std::to_string(expected) +
                               " at p=" + std::to_string(p));
  } else {
    out.push_back(identity(m));
    naive_divisors(m, guard, out);
    if (out.size() > guard)
      throw TooLarge("Jacobian larger than guard at p=" + std::to_string(p));
  }
  return out;
}

std::vector<uint64_t> curve_image_keys(const CurveSpec& c, uint64_t p) {
  FpModel m = model_mod(c, p);
  require_packable(m);
  std::vector<uint64_t> keys;
  auto pts = enumerate_points(c, p);
  keys.reserve(pts.size());
  keys.push_back(divisor_key(m, identity(m)));  // infinity
  for (size_t i = 1; i < pts.size(); ++i)
    keys.push_back(divisor_key(m, albanese(m, pts[i].x, pts[i].y)));
  return keys;
}

uint64_t GroupStructure::canonical_index(const Mumford<FpCtx>& d) const {
  auto it = canon_of_key.find(divisor_key(model, d));
  if (it == canon_of_key.end())
    throw InvalidDivisor("divisor is not an element of J(F_p) for p=" + std::to_string(p));
  return it->second;
}

std::vector<uint64_t> GroupStructure::dl(const Mumford<FpCtx>& d) const {
  return unflatten(canonical_index(d));
}

uint64_t GroupStructure::flatten(const std::vector<uint64_t>& digits) const {
  assert(digits.size() == invariant_factors.size());
  uint64_t idx = 0;
  for (size_t i = invariant_factors.size(); i-- > 0;) {
    assert(digits[i] < invariant_factors[i]);
    idx = idx * invariant_factors[i] + digits[i];
  }
  return idx;
}

std::vector<uint64_t> GroupStructure::unflatten(uint64_t idx) const {
  std::vector<uint64_t> digits(invariant_factors.size());
  for (size_t i = 0; i < invariant_factors.size(); ++i) {
    digits[i] = idx % invariant_factors[i];
    idx /= invariant_factors[i];
  }
  assert(idx == 0);
  return digits;
}

GroupStructure group_structure(const CurveSpec& c, uint64_t p, uint64_t guard) {
  GroupStructure gs;
  gs.model = model_mod(c, p);
  gs.p = p;
  auto elems = enumerate_jacobian(c, p, guard);
  gs.order = elems.size();

  // Incremental closure producing a polycyclic presentation: generators
  // g_i with relative orders k_i, and each element indexed so that
  // index(s + j g_i) = index(s) + j * |previous subgroup|.
  std::vector<uint64_t> chain;  // keys in discovery order
  std::unordered_map<uint64_t, uint32_t> pidx_of_key;
  chain.reserve(gs.order);
  pidx_of_key.reserve(gs.order * 2);
  const uint64_t id_key = divisor_key(gs.model, identity(gs.model));
  chain.push_back(id_key);
  pidx_of_key.emplace(id_key, 0);

  std::vector<Mumford<FpCtx>> gens;
  std::vector<uint64_t> rel_orders;
  std::vector<uint32_t> rel_hits;  // pidx of k_i * g_i in the previous subgroup

  for (const auto& cand : elems) {
    uint64_t ck = divisor_key(gs.model, cand);
    if (pidx_of_key.count(ck)) continue;
    uint64_t m = chain.size();
    // relative order of cand over the current subgroup
    Mumford<FpCtx> cur = cand;
    uint64_t k = 1;
    while (!pidx_of_key.count(divisor_key(gs.model, cur))) {
      cur = cantor_add(gs.model, cur, cand);
      ++k;
    }
    uint32_t hit = pidx_of_key.at(divisor_key(gs.model, cur));
    // extend: layer j holds s + j*cand computed from layer j-1
    for (uint64_t j = 1; j < k; ++j) {
      for (uint64_t s = 0; s < m; ++s) {
        Mumford<FpCtx> prev = divisor_from_key(gs.model, chain[(j - 1) * m + s]);
        Mumford<FpCtx> nxt = cantor_add(gs.model, prev, cand);
        uint64_t nk = divisor_key(gs.model, nxt);
        assert(chain.size() == j * m + s);
        bool fresh = pidx_of_key.emplace(nk, static_cast<uint32_t>(chain.size())).second;
        assert(fresh);  // cosets of the previous subgroup are disjoint
        (void)fresh;
        chain.push_back(nk);
      }
    }
    gens.push_back(cand);
    rel_orders.push_back(k);
    rel_hits.push_back(hit);
    if (chain.size() == gs.order) break;
  }
  if (chain.size() != gs.order)
    throw InconsistentCounts("closure reached " + std::to_string(chain.size()) +
                             " of " + std::to_string(gs.order) + " elements at p=" + std::to_string(p));

  const size_t t = gens.size();
  // digits of a chain index in the mixed radix (k_1, ..., k_t)
  auto digits_of = [&](uint64_t pidx) {
    std::vector<uint64_t> a(t);
    for (size_t i = 0; i < t; ++i) {
      a[i] = pidx % rel_orders[i];
      pidx /= rel_orders[i];
    }
    return a;
  };

  // relation matrix: k_i g_i = sum_{j<i} a_j g_j
  std::vector<std::vector<mpz_class>> R(t, std::vector<mpz_class>(t, 0));
  for (size_t i = 0; i < t; ++i) {
    R[i][i] = static_cast<unsigned long>(rel_orders[i]);
    auto a = digits_of(rel_hits[i]);
    for (size_t j = 0; j < i; ++j) R[i][j] -= static_cast<unsigned long>(a[j]);
  }
  SnfResult snf = smith_normal_form(R);

  std::vector<size_t> cols;  // columns with a nontrivial invariant factor
  mpz_class prod = 1;
  for (size_t i = 0; i < t; ++i) {
    prod *= snf.diag[i];
    if (snf.diag[i] > 1) {
      cols.push_back(i);
      gs.invariant_factors.push_back(snf.diag[i].get_ui());
    }
  }
  assert(t == 0 || prod == static_cast<unsigned long>(gs.order));
  gs.exponent = gs.invariant_factors.empty() ? 1 : gs.invariant_factors.back();

  // canonical index of every element: digits a -> b = a V mod diag
  const size_t s = cols.size();
  gs.key_of_canon.assign(gs.order, 0);
  gs.canon_of_key.reserve(gs.order * 2);
  for (uint64_t pidx = 0; pidx < gs.order; ++pidx) {
    auto a = digits_of(pidx);
    uint64_t canon = 0;
    for (size_t jj = s; jj-- > 0;) {
      size_t col = cols[jj];
      uint64_t n = gs.invariant_factors[jj];
      uint64_t b = 0;
      for (size_t i = 0; i < t; ++i) {
        if (a[i] == 0) continue;
        mpz_class term = snf.V[i][col] % static_cast<unsigned long>(n);
        long tv = term.get_si();
        if (tv < 0) tv += static_cast<long>(n);
        b = (b + a[i] % n * static_cast<uint64_t>(tv)) % n;
      }
      canon = canon * n + b;
    }
    gs.canon_of_key.emplace(chain[pidx], static_cast<uint32_t>(canon));
    gs.key_of_canon[canon] = chain[pidx];
  }

  // basis h_j = sum_i Vinv[j][i] g_i, verified to have the right dl/order
  for (size_t jj = 0; jj < s; ++jj) {
    size_t col = cols[jj];
    Mumford<FpCtx> h = identity(gs.model);
    for (size_t i = 0; i < t; ++i) {
      mpz_class e = snf.Vinv[col][i] % static_cast<unsigned long>(gs.order);
      long ev = e.get_si();
      if (ev < 0) ev += static_cast<long>(gs.order);
      if (ev == 0) continue;
      h = cantor_add(gs.model, h, scalar_mul(gs.model, ev, gens[i]));
    }
    gs.basis.push_back(h);
    auto d = gs.dl(h);
    for (size_t q = 0; q < s; ++q) assert(d[q] == (q == jj ? 1u : 0u));
    assert(scalar_mul(gs.model, static_cast<long long>(gs.invariant_factors[jj]), h)
               .is_identity());
  }
  return gs;
}

Mumford<FpCtx> reduce_divisor(const CurveSpec& c, const Mumford<QCtx>& d, uint64_t p) {
  FpModel m = model_mod(c, p);
  auto reduce_poly = [&](const Poly<QCtx>& q) {
    std::vector<Fp> coeffs;
    for (const auto& e : q.c) {
      mpz_class num = e.get_num(), den = e.get_den();
      if (mpz_divisible_ui_p(den.get_mpz_t(), p))
        throw DenominatorAtP("divisor has p=" + std::to_string(p) + " in a denominator");
      uint64_t nv = mpz_fdiv_ui(num.get_mpz_t(), p);
      uint64_t dv = mpz_fdiv_ui(den.get_mpz_t(), p);
      coeffs.push_back(Fp(nv, p) * inv(Fp(dv, p)));
    }
    return poly_of(m.k, std::move(coeffs));
  };
  Mumford<FpCtx> r{reduce_poly(d.u), reduce_poly(d.v)};
  try {
    validate_divisor(m, r);
  } catch (const InvalidDivisor& e) {
    throw InvalidReduction("reduction mod " + std::to_string(p) + " is not a valid divisor: " +
                           e.what());
  }
  return r;
}

}  // namespace mws
