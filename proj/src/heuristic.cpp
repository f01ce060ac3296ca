#include "mws/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mws/nt.hpp"
#include "mws/rng.hpp"

namespace mws {

namespace {

double log_mpz(const mpz_class& z) {
  long e2 = 0;
  double d = mpz_get_d_2exp(&e2, z.get_mpz_t());
  return std::log(d) + (double)e2 * std::log(2.0);
}

}  // namespace

SmoothnessStats smooth_fraction(const CurveSpec& curve, double B, double u,
                                OrderStore* store) {
  if (!(B >= 3)) throw OutOfRange("smooth_fraction: B must be >= 3");
  if (!(u > 0 && u < 1)) throw OutOfRange("smooth_fraction: u must lie in (0, 1)");

  OrderStore local(curve);
  OrderStore* os = store ? store : &local;

  SmoothnessStats st;
  st.curve_id = curve.id;
  st.B = B;
  st.u = u;
  double arg = (double)curve.genus / u;
  st.rho_baseline = arg <= 20.0 ? dickman_rho(arg) : 0.0;

  double threshold = std::pow(B, u);
  for (uint64_t p : primes_up_to((uint64_t)B)) {
    if (!good_reduction(curve, p)) continue;
    ++st.total;
    try {
      const LocalCounts& lc = os->at(p);
      if ((double)lc.fact.max_prime() <= threshold) ++st.smooth;
    } catch (const FactorizationFailure&) {
      ++st.skipped;
    }
  }
  std::size_t usable = st.total - st.skipped;
  st.fraction = usable ? (double)st.smooth / (double)usable : 0.0;
  return st;
}

LcmBound lcm_of_orders(const std::vector<uint64_t>& primes,
                       const std::vector<uint64_t>& orders, double B) {
  if (primes.size() != orders.size())
    throw OutOfRange("lcm_of_orders: primes and orders must pair up");

  LcmBound out;
  out.B = B;
  for (uint64_t n : orders) {
    mpz_class nz((unsigned long)n);
    mpz_lcm(out.L.get_mpz_t(), out.L.get_mpz_t(), nz.get_mpz_t());
    out.m_max = std::max(out.m_max, n);
  }
  out.log_L = log_mpz(out.L);

  mpz_class bound = 1;
  for (uint64_t q : primes_up_to((uint64_t)B)) {
    ++out.pi_B;
    unsigned e = 0;
    unsigned __int128 pw = q;
    while (pw <= out.m_max) {
      ++e;
      pw *= q;
    }
    if (e) {
      mpz_class qe;
      mpz_ui_pow_ui(qe.get_mpz_t(), (unsigned long)q, e);
      bound *= qe;
    }
  }
  out.bound_log = (double)out.pi_B * std::log((double)out.m_max);
  out.divides = mpz_divisible_p(bound.get_mpz_t(), out.L.get_mpz_t()) != 0;
  return out;
}

TrialEstimate estimate_intersection_prob(const CurveSpec& curve, const GeneratorSet& gens,
                                         double B, std::size_t trials, uint64_t seed,
                                         const EstimateOptions& opts) {
  OrderStore local(curve, opts.cache, opts.structure_guard);
  OrderStore* os = opts.store ? opts.store : &local;

  std::vector<uint64_t> S = opts.primes;
  if (S.empty()) S = select_primes(curve, B, opts.max_primes, os);
  if (S.size() > opts.max_primes) S.resize(opts.max_primes);
  if (S.empty()) throw InsufficientPrimes("estimate: S(B) is empty");
  if (trials == 0) throw InsufficientPrimes("estimate: trials must be positive");

  std::vector<PrimeLocalData> base;
  for (uint64_t p : S) {
    if (!good_reduction(curve, p)) continue;
    try {
      base.push_back(local_data(curve, gens, p, os, opts.structure_guard));
    } catch (const SkipPrime&) {
      // a skipped prime only shrinks S
    }
  }
  if (base.empty()) throw InsufficientPrimes("estimate: every prime was skipped");

  TrialEstimate est;
  est.B = B;
  est.trials = trials;
  mpz_class L = 1;
  for (const PrimeLocalData& d : base) {
    est.primes.push_back(d.p);
    mpz_class nz((unsigned long)d.order);
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), nz.get_mpz_t());
    est.log_P += std::log((double)d.n1 / (double)d.order);
  }
  est.log_I_bound = (double)gens.rank() * log_mpz(L);

  // One persistent pool of canonical indices per prime; a partial
  // Fisher-Yates pass leaves a uniform m-subset in the prefix whatever the
  // pool's prior permutation.
  std::vector<std::vector<uint64_t>> pools;
  pools.reserve(base.size());
  for (const PrimeLocalData& d : base) {
    std::vector<uint64_t> v(d.order);
    std::iota(v.begin(), v.end(), 0);
    pools.push_back(std::move(v));
  }

  for (std::size_t t = 0; t < trials; ++t) {
    SieveState st = initial_state(gens.rank());
    bool alive = true;
    for (std::size_t k = 0; k < base.size(); ++k) {
      const PrimeLocalData& d = base[k];
      std::vector<uint64_t>& pool = pools[k];
      uint64_t m = opts.mode == SubsetMode::kFullGroup ? d.order : (uint64_t)d.n1;
      // the shuffle always runs, dead trial or not: the pool state feeds
      // the next trial's draw, and it must depend only on (seed, t, p)
      CounterRng rng(seed, (uint64_t)t, d.p);
      for (uint64_t i = 0; i < m && i + 1 < d.order; ++i)
        std::swap(pool[i], pool[i + rng.below(d.order - i)]);
      if (!alive) continue;

      PrimeLocalData drawn = d;
      drawn.curve_image.assign(pool.begin(), pool.begin() + m);
      std::sort(drawn.curve_image.begin(), drawn.curve_image.end());
      drawn.n1 = (int64_t)m;
      st = sieve_step(st, drawn, opts.survivor_cap);
      alive = !st.survivors.empty();
    }
    if (alive) ++est.hits;
  }
  est.estimate = (double)est.hits / (double)trials;
  return est;
}

}  // namespace mws
