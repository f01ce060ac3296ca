#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mws/poly.hpp"

using namespace mws;

namespace {

Poly<FpCtx> rand_poly(FpCtx k, int maxdeg, std::mt19937_64& rng) {
  std::vector<Fp> c;
  int d = static_cast<int>(rng() % static_cast<uint64_t>(maxdeg + 2)) - 1;  // allow zero poly
  for (int i = 0; i <= d; ++i) c.emplace_back(rng() % k.p, k.p);
  return poly_of(k, std::move(c));
}

}  // namespace

TEST_CASE("construction and normalization") {
  FpCtx k{7};
  auto z = poly_zero(k);
  CHECK(z.deg() == -1);
  CHECK(z.is_zero());
  auto a = poly_of_ints(k, {1, 2, 0, 0});  // trailing zeros stripped
  CHECK(a.deg() == 1);
  CHECK(a.coeff(0).value() == 1);
  CHECK(a.coeff(5).value() == 0);
  CHECK(poly_of_ints(k, {7, 14}).is_zero());
  CHECK(poly_x(k).deg() == 1);
  CHECK(poly_one(k).deg() == 0);
}

TEST_CASE("arithmetic over F_7 against hand values") {
  FpCtx k{7};
  auto a = poly_of_ints(k, {1, 1});      // 1 + x
  auto b = poly_of_ints(k, {6, 1});      // 6 + x = x - 1
  CHECK(a * b == poly_of_ints(k, {6, 0, 1}));  // x^2 - 1
  CHECK(a + b == poly_of_ints(k, {0, 2}));
  CHECK(a - a == poly_zero(k));
  CHECK(scale(a, Fp(3, 7)) == poly_of_ints(k, {3, 3}));
  CHECK(shift_up(a, 2) == poly_of_ints(k, {0, 0, 1, 1}));
}

TEST_CASE("divmod property on random polynomials") {
  std::mt19937_64 rng(42);
  for (uint64_t p : {5ull, 7ull, 13ull, 101ull}) {
    FpCtx k{p};
    for (int it = 0; it < 300; ++it) {
      auto a = rand_poly(k, 8, rng);
      auto b = rand_poly(k, 5, rng);
      if (b.is_zero()) {
        CHECK_THROWS_AS(divmod(a, b), ZeroInverse);
        continue;
      }
      auto [q, r] = divmod(a, b);
      CHECK(q * b + r == a);
      CHECK(r.deg() < b.deg());
    }
  }
}

TEST_CASE("gcd and xgcd, including zero arguments") {
  FpCtx k{13};
  auto x2m1 = poly_of_ints(k, {-1, 0, 1});       // x^2 - 1
  auto sq = poly_of_ints(k, {1, -2, 1});         // (x-1)^2
  CHECK(poly_gcd(x2m1, sq) == poly_of_ints(k, {-1, 1}));
  CHECK(poly_gcd(x2m1, poly_zero(k)) == x2m1);   // already monic
  CHECK(poly_gcd(poly_zero(k), poly_zero(k)).is_zero());

  std::mt19937_64 rng(99);
  for (int it = 0; it < 400; ++it) {
    auto a = rand_poly(k, 6, rng);
    auto b = rand_poly(k, 6, rng);
    auto [d, s, t] = poly_xgcd(a, b);
    CHECK(s * a + t * b == d);
    CHECK(d == poly_gcd(a, b));
    if (!d.is_zero()) {
      CHECK(d.lc().value() == 1);
      CHECK((a % d).is_zero());
      CHECK((b % d).is_zero());
    }
  }
  // explicit zero-argument cases
  auto a = poly_of_ints(k, {2, 4});
  auto [d1, s1, t1] = poly_xgcd(a, poly_zero(k));
  CHECK(s1 * a + t1 * poly_zero(k) == d1);
  CHECK(d1 == monic(a));
  auto [d2, s2, t2] = poly_xgcd(poly_zero(k), a);
  CHECK(s2 * poly_zero(k) + t2 * a == d2);
  auto [d3, s3, t3] = poly_xgcd(poly_zero(k), poly_zero(k));
  CHECK(d3.is_zero());
}

TEST_CASE("eval, derivative, monic, exact division") {
  FpCtx k{11};
  auto f = poly_of_ints(k, {1, 0, 0, 1});  // x^3 + 1
  CHECK(eval(f, Fp(2, 11)).value() == 9);
  CHECK(eval(f, Fp(0, 11)).value() == 1);
  CHECK(derivative(f) == poly_of_ints(k, {0, 0, 3}));
  CHECK(derivative(poly_one(k)).is_zero());
  auto g = poly_of_ints(k, {3, 6});
  CHECK(monic(g) == poly_of_ints(k, {6, 1}));  // 3*inv(6)=3*2=6
  CHECK(div_exact(f, poly_of_ints(k, {1, 1})) == poly_of_ints(k, {1, -1, 1}));
}

TEST_CASE("rational coefficient context") {
  QCtx q;
  auto half = mpq_class(1, 2);
  auto f = poly_of(q, {mpq_class(1), half});  // 1 + x/2
  CHECK(eval(f, mpq_class(4)) == 3);
  auto [d, s, t] = poly_xgcd(f, poly_of_ints(q, {-2, 1}));  // x - 2 divides nothing common
  CHECK(d == poly_one(q));
  CHECK_THROWS_AS(QCtx::inv(mpq_class(0)), ZeroInverse);
  // exactness: (x/3 + 1/7)(21x) round-trips
  auto a = poly_of(q, {mpq_class(1, 7), mpq_class(1, 3)});
  auto b = poly_of(q, {mpq_class(0), mpq_class(21)});
  CHECK(div_exact(a * b, b) == a);
}

TEST_CASE("resultants over Q") {
  QCtx q;
  auto r1 = resultant(poly_of_ints(q, {-2, 1}), poly_of_ints(q, {-3, 1}));
  CHECK(r1 == -1);  // B(2) for B = x - 3
  auto r2 = resultant(poly_of_ints(q, {-1, 0, 1}), poly_of_ints(q, {-4, 0, 1}));
  CHECK(r2 == 9);   // (1-4)(1-4)
  auto r3 = resultant(poly_of_ints(q, {1, 0, 1}), poly_of_ints(q, {1, 0, 1}));
  CHECK(r3 == 0);   // common factor
  auto r4 = resultant(poly_of_ints(q, {1, 2}), poly_of_ints(q, {5}));
  CHECK(r4 == 5);   // res(deg1, const) = c^1
}
