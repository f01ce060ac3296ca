#include "mws/curve.hpp"

#include <string>

#include "mws/errors.hpp"

namespace mws {

namespace {

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

// Quadratic character table for F_p: chi[a] in {-1, 0, +1}.
std::vector<int8_t> chi_table(uint64_t p) {
  std::vector<int8_t> chi(p, -1);
  chi[0] = 0;
  for (uint64_t x = 1; x <= (p - 1) / 2; ++x) chi[mulmod(x, x, p)] = 1;
  return chi;
}

uint64_t eval_mod(const std::vector<long long>& f, uint64_t x, uint64_t p) {
  uint64_t acc = 0;
  for (size_t i = f.size(); i-- > 0;) {
    long long c = f[i] % static_cast<long long>(p);
    if (c < 0) c += static_cast<long long>(p);
    acc = addmod(mulmod(acc, x, p), static_cast<uint64_t>(c), p);
  }
  return acc;
}

}  // namespace

CurveSpec CurveSpec::from_coeffs(const std::vector<long long>& coeffs) {
  if (coeffs.size() < 4 || coeffs.size() % 2 != 0)
    throw EvenDegree("curve polynomial must have odd degree >= 3 (got degree " +
                     std::to_string(static_cast<long long>(coeffs.size()) - 1) + ")");
  if (coeffs.back() != 1) throw ParseError("curve polynomial must be monic");
  CurveSpec c;
  c.f = coeffs;
  c.genus = (static_cast<int>(coeffs.size()) - 2) / 2;

  // disc(f) = (-1)^{n(n-1)/2} res(f, f') for monic f; the resultant of
  // integer polynomials is an integer although we compute over Q.
  QCtx q;
  Poly<QCtx> fq = poly_of_ints(q, coeffs);
  mpq_class res = resultant(fq, derivative(fq));
  int n = fq.deg();
  if ((n * (n - 1) / 2) % 2 == 1) res = -res;
  if (res == 0) throw NotSquarefree("curve polynomial must be squarefree (discriminant is 0)");
  if (res.get_den() != 1) throw ParseError("internal: discriminant not an integer");
  c.disc = res.get_num();

  std::string key;
  for (long long v : coeffs) key += std::to_string(v) + ",";
  c.id = fnv1a(key);
  return c;
}

Poly<QCtx> curve_poly_q(const CurveSpec& c) { return poly_of_ints(QCtx{}, c.f); }

Poly<FpCtx> curve_poly_mod(const CurveSpec& c, uint64_t p) {
  require_odd_prime(p);
  return poly_of_ints(FpCtx{p}, c.f);
}

bool good_reduction(const CurveSpec& c, uint64_t p) {
  if (!is_prime_u64(p)) throw BadPrime("p=" + std::to_string(p) + " is not prime");
  if (p == 2) return false;  // the y^2 = f(x) model is always bad at 2
  return mpz_divisible_ui_p(c.disc.get_mpz_t(), p) == 0;
}

std::vector<AffinePoint> enumerate_points(const CurveSpec& c, uint64_t p) {
  require_odd_prime(p);
  std::vector<AffinePoint> pts;
  pts.push_back(AffinePoint::infinity());
  for (uint64_t x = 0; x < p; ++x) {
    Fp fx(eval_mod(c.f, x, p), p);
    if (fx.is_zero()) {
      pts.push_back(AffinePoint::xy(Fp(x, p), Fp(0, p)));
      continue;
    }
    if (auto r = fp_sqrt(fx)) {
      pts.push_back(AffinePoint::xy(Fp(x, p), *r));
      pts.push_back(AffinePoint::xy(Fp(x, p), -*r));
    }
  }
  return pts;
}

uint64_t count_points(const CurveSpec& c, uint64_t p) {
  require_odd_prime(p);
  auto chi = chi_table(p);
  // N1 = 1 + sum_x (1 + chi(f(x)))
  int64_t acc = static_cast<int64_t>(1 + p);
  for (uint64_t x = 0; x < p; ++x) acc += chi[eval_mod(c.f, x, p)];
  return static_cast<uint64_t>(acc);
}

uint64_t count_points_ext(const CurveSpec& c, uint64_t p) {
  require_odd_prime(p);
  auto chi = chi_table(p);
  uint64_t n = smallest_nonresidue(p);
  FpCtx k{p};
  Poly<FpCtx> f = poly_of_ints(k, c.f);

  // chi_2(z) = chi_p(Norm z) and f has F_p coefficients, so the character
  // sum over conjugates x and xbar is equal: loop b in 1..(p-1)/2 and
  // double; the b = 0 row is chi_p(f(x))^2.
  int64_t acc = 0;
  for (uint64_t x = 0; x < p; ++x)
    if (eval_mod(c.f, x, p) != 0) acc += 1;
  for (uint64_t b = 1; b <= (p - 1) / 2; ++b) {
    for (uint64_t a = 0; a < p; ++a) {
      Fp2 x(Fp(a, p), Fp(b, p), n);
      Fp2 v = Fp2::scalar(Fp(0, p), n);
      for (size_t i = f.c.size(); i-- > 0;) v = v * x + Fp2::scalar(f.c[i], n);
      acc += 2 * chi[v.norm().value()];
    }
  }
  return static_cast<uint64_t>(static_cast<int64_t>(1 + p * p) + acc);
}

PointCounts point_counts(const CurveSpec& c, uint64_t p) {
  if (!good_reduction(c, p))
    throw BadPrime("p=" + std::to_string(p) + " is a prime of bad reduction");
  PointCounts n;
  n.p = p;
  n.genus = c.genus;
  n.N1 = count_points(c, p);
  n.N2 = count_points_ext(c, p);
  validate_counts(n);
  return n;
}

void validate_counts(const PointCounts& n) {
  const int g = n.genus;
  // |p + 1 - N1| <= 2g sqrt(p)  <=>  (p + 1 - N1)^2 <= 4 g^2 p (exact integers)
  int64_t a1 = static_cast<int64_t>(n.p) + 1 - static_cast<int64_t>(n.N1);
  if (static_cast<unsigned __int128>(a1 < 0 ? -a1 : a1) * static_cast<uint64_t>(a1 < 0 ? -a1 : a1) >
      static_cast<unsigned __int128>(4) * g * g * n.p)
    throw InconsistentCounts("N1=" + std::to_string(n.N1) + " violates the Weil bound at p=" +
                             std::to_string(n.p));
  __int128 p2 = static_cast<__int128>(n.p) * n.p;
  __int128 a2 = p2 + 1 - static_cast<__int128>(n.N2);
  if (a2 < 0) a2 = -a2;
  if (a2 > static_cast<__int128>(2) * g * n.p)
    throw InconsistentCounts("N2=" + std::to_string(n.N2) + " violates the Weil bound at p=" +
                             std::to_string(n.p));
}

}  // namespace mws
