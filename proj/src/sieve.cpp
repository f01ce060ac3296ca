#include "mws/sieve.hpp"

#include <algorithm>
#include <set>

#include "mws/nt.hpp"

namespace mws {

PrimeLocalData local_data(const CurveSpec& curve, const GeneratorSet& gens, uint64_t p,
                          OrderStore* store, uint64_t structure_guard,
                          const ImageOverride& image_override) {
  if (!good_reduction(curve, p)) throw BadPrime("bad reduction at p=" + std::to_string(p));
  try {
    PrimeLocalData d;
    d.p = p;
    d.structure = store ? store->structure_at(p)
                        : std::make_shared<const GroupStructure>(
                              group_structure(curve, p, structure_guard));
    const GroupStructure& gs = *d.structure;
    d.order = gs.order;
    d.exponent = gs.exponent;

    if (store && curve.genus <= 2) {
      const LocalCounts& lc = store->at(p);  // independent zeta-order route
      if (lc.order != d.order)
        throw InconsistentCounts("zeta order " + std::to_string(lc.order) +
                                 " != enumerated order " + std::to_string(d.order) +
                                 " at p=" + std::to_string(p));
    }

    for (const auto& g : gens.generators)
      d.phi.push_back(gs.dl(reduce_divisor(curve, g, p)));

    for (const auto& t : gens.torsion_elems) {
      auto digits = gs.dl(reduce_divisor(curve, t, p));
      if (std::find(d.torsion_dl.begin(), d.torsion_dl.end(), digits) == d.torsion_dl.end())
        d.torsion_dl.push_back(digits);
    }
    if (d.torsion_dl.empty())
      d.torsion_dl.push_back(std::vector<uint64_t>(gs.invariant_factors.size(), 0));

    std::optional<std::vector<uint64_t>> override_keys;
    if (image_override) override_keys = image_override(p);
    std::vector<uint64_t> keys = override_keys ? *override_keys : curve_image_keys(curve, p);
    for (uint64_t k : keys) {
      auto digits = gs.dl(divisor_from_key(gs.model, k));
      d.curve_image.push_back(gs.flatten(digits));
    }
    std::sort(d.curve_image.begin(), d.curve_image.end());
    d.curve_image.erase(std::unique(d.curve_image.begin(), d.curve_image.end()),
                        d.curve_image.end());
    d.n1 = (int64_t)d.curve_image.size();
    return d;
  } catch (const DenominatorAtP& e) {
    throw SkipPrime(p, e.what());
  } catch (const InvalidReduction& e) {
    throw SkipPrime(p, e.what());
  } catch (const FactorizationFailure& e) {
    throw SkipPrime(p, e.what());
  } catch (const TooLarge& e) {
    throw SkipPrime(p, e.what());
  }
}

SieveState initial_state(std::size_t rank) {
  SieveState st;
  st.rank = rank;
  st.modulus = 1;
  st.survivors.push_back(std::vector<mpz_class>(rank, 0));
  return st;
}

SieveState sieve_step(const SieveState& st, const PrimeLocalData& data,
                      std::size_t survivor_cap, StepStats* stats) {
  const auto& ns = data.structure->invariant_factors;  // moduli n_1 | ... | n_s
  const std::size_t s = ns.size();
  const std::size_t r = st.rank;

  mpz_class new_mod;
  mpz_lcm_ui(new_mod.get_mpz_t(), st.modulus.get_mpz_t(), data.exponent);
  mpz_class lift_q = new_mod / st.modulus;  // exact by construction

  // Candidate count |survivors| * lift^r, checked before materializing.
  mpz_class cand_count = (std::size_t)st.survivors.size();
  for (std::size_t j = 0; j < r; ++j) cand_count *= lift_q;
  if (cand_count > (unsigned long)survivor_cap)
    throw StateExplosion("p=" + std::to_string(data.p) + ": " + cand_count.get_str() +
                         " candidate classes exceed cap " + std::to_string(survivor_cap) +
                         " (choose smoother primes)");
  const uint64_t lift = mpz_get_ui(lift_q.get_mpz_t());

  SieveState out;
  out.rank = r;
  out.modulus = new_mod;
  out.primes_used = st.primes_used;
  out.primes_used.push_back(data.p);

  std::vector<uint64_t> w(s), shifted(s), t(r);
  std::vector<mpz_class> a(r);
  std::size_t candidates = 0;
  for (const auto& a0 : st.survivors) {
    std::fill(t.begin(), t.end(), 0);
    while (true) {
      for (std::size_t j = 0; j < r; ++j) a[j] = a0[j] + st.modulus * (unsigned long)t[j];
      ++candidates;

      for (std::size_t i = 0; i < s; ++i) {
        uint64_t wi = 0;
        for (std::size_t j = 0; j < r; ++j) {
          uint64_t aj = mpz_fdiv_ui(a[j].get_mpz_t(), ns[i]);
          wi = addmod(wi, mulmod(data.phi[j][i], aj, ns[i]), ns[i]);
        }
        w[i] = wi;
      }
      bool hit = false;
      for (const auto& tau : data.torsion_dl) {
        for (std::size_t i = 0; i < s; ++i) shifted[i] = addmod(w[i], tau[i], ns[i]);
        uint64_t flat = data.structure->flatten(shifted);
        if (std::binary_search(data.curve_image.begin(), data.curve_image.end(), flat)) {
          hit = true;
          break;
        }
      }
      if (hit) out.survivors.push_back(a);

      // odometer over the lift digits
      std::size_t j = 0;
      while (j < r && ++t[j] == lift) t[j++] = 0;
      if (j == r) break;
    }
  }

  if (stats) {
    stats->p = data.p;
    stats->order = data.order;
    stats->exponent = data.exponent;
    stats->invariants = ns;
    stats->n1 = data.n1;
    stats->modulus_after = out.modulus;
    stats->survivors_before = st.survivors.size();
    stats->candidates = candidates;
    stats->survivors_after = out.survivors.size();
    stats->elimination_ratio =
        candidates ? 1.0 - (double)out.survivors.size() / (double)candidates : 0.0;
  }
  return out;
}

std::vector<uint64_t> select_primes(const CurveSpec& curve, double B, std::size_t cap,
                                    OrderStore* store) {
  std::vector<uint64_t> out;
  if (B < 2 || cap == 0) return out;
  OrderStore local(curve);
  OrderStore& st = store ? *store : local;
  uint64_t pmax = (uint64_t)(B * B);
  for (uint64_t p : primes_up_to(pmax)) {
    if (!good_reduction(curve, p)) continue;
    try {
      const LocalCounts& lc = st.at(p);
      if (lc.fact.max_prime() <= (uint64_t)B && is_smooth(lc.order, B)) out.push_back(p);
    } catch (const FactorizationFailure&) {
      continue;  // unusable prime, not fatal
    } catch (const TooLarge&) {
      continue;
    }
    if (out.size() == cap) break;
  }
  return out;
}

SieveReport run_scharaschkin(const CurveSpec& curve, const GeneratorSet& gens,
                             const SieveOptions& opts) {
  OrderStore local_store(curve, opts.cache, opts.structure_guard);
  OrderStore& store = opts.store ? *opts.store : local_store;
  std::vector<uint64_t> primes = opts.primes;
  if (primes.empty() && opts.B >= 2) primes = select_primes(curve, opts.B, opts.max_primes, &store);

  SieveReport rep;
  SieveState st = initial_state(gens.rank());

  for (uint64_t p : primes) {
    if (!good_reduction(curve, p)) {
      rep.skipped.push_back({p, "bad reduction"});
      continue;
    }
    PrimeLocalData data;
    try {
      data = local_data(curve, gens, p, &store, opts.structure_guard, opts.image_override);
    } catch (const SkipPrime& e) {
      rep.skipped.push_back({p, e.what()});
      continue;
    }
    StepStats stats;
    try {
      st = sieve_step(st, data, opts.survivor_cap, &stats);
    } catch (StateExplosion& e) {
      rep.verdict = Verdict::Inconclusive;
      rep.primes_used = st.primes_used;
      rep.modulus = st.modulus;
      rep.survivors = st.survivors;
      e.partial = std::make_shared<SieveReport>(rep);
      throw;
    }
    rep.steps.push_back(stats);
    if (st.survivors.empty()) {
      rep.verdict = Verdict::Obstructed;
      break;
    }
  }

  if (!st.survivors.empty()) rep.verdict = Verdict::Inconclusive;
  rep.primes_used = st.primes_used;
  rep.modulus = st.modulus;
  rep.survivors = st.survivors;
  return rep;
}

namespace {

// Image of one divisor at each prime of S, as packed keys.
std::vector<uint64_t> tuple_of(const CurveSpec& curve, const std::vector<FpModel>& models,
                               const std::vector<uint64_t>& primes, const Mumford<QCtx>& d) {
  std::vector<uint64_t> t(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i)
    t[i] = divisor_key(models[i], reduce_divisor(curve, d, primes[i]));
  return t;
}

}  // namespace

bool certify(const CurveSpec& curve, const GeneratorSet& gens,
             const std::vector<uint64_t>& primes, uint64_t cap,
             const ImageOverride& image_override) {
  if (primes.empty()) return false;  // the empty product obstructs nothing

  std::vector<FpModel> models;
  std::vector<std::vector<uint64_t>> images;  // sorted packed keys per prime
  for (uint64_t p : primes) {
    models.push_back(model_mod(curve, p));
    require_packable(models.back());
    std::optional<std::vector<uint64_t>> ov;
    if (image_override) ov = image_override(p);
    std::vector<uint64_t> keys = ov ? *ov : curve_image_keys(curve, p);
    std::sort(keys.begin(), keys.end());
    images.push_back(std::move(keys));
  }

  const std::size_t np = primes.size();
  std::vector<uint64_t> id_tuple(np);
  for (std::size_t i = 0; i < np; ++i) id_tuple[i] = divisor_key(models[i], identity(models[i]));

  auto add_tuples = [&](const std::vector<uint64_t>& x, const std::vector<uint64_t>& y) {
    std::vector<uint64_t> z(np);
    for (std::size_t i = 0; i < np; ++i) {
      auto sum = cantor_add(models[i], divisor_from_key(models[i], x[i]),
                            divisor_from_key(models[i], y[i]));
      z[i] = divisor_key(models[i], sum);
    }
    return z;
  };

  // Generator images: free part and torsion generators alike.
  std::vector<std::vector<uint64_t>> gen_tuples;
  for (const auto& g : gens.generators) gen_tuples.push_back(tuple_of(curve, models, primes, g));
  for (const auto& t : gens.torsion) gen_tuples.push_back(tuple_of(curve, models, primes, t));

  // Polycyclic closure of the image subgroup inside prod J(F_p).
  std::set<std::vector<uint64_t>> seen = {id_tuple};
  std::vector<std::vector<uint64_t>> elems = {id_tuple};
  for (const auto& g : gen_tuples) {
    std::vector<std::vector<uint64_t>> base = elems;  // subgroup before this generator
    std::vector<uint64_t> jg = g;
    while (!seen.count(jg)) {
      for (const auto& e : base) {
        auto t = add_tuples(e, jg);
        if (seen.insert(t).second) {
          elems.push_back(t);
          if (elems.size() > cap)
            throw TooLarge("image group exceeds certify cap " + std::to_string(cap));
        }
      }
      jg = add_tuples(jg, g);
    }
  }

  for (const auto& e : elems) {
    bool everywhere = true;
    for (std::size_t i = 0; i < np; ++i) {
      if (!std::binary_search(images[i].begin(), images[i].end(), e[i])) {
        everywhere = false;
        break;
      }
    }
    if (everywhere) return false;  // the images intersect; no obstruction
  }
  return true;
}

}  // namespace mws
