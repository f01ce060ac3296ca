#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mws/cache.hpp"
#include "mws/heuristic.hpp"
#include "mws/io.hpp"
#include "mws/nt.hpp"
#include "mws/records.hpp"
#include "mws/sieve.hpp"

namespace {

using namespace mws;

struct CommonOpts {
  std::string curve_path;
  std::string gens_path;
  std::string cache_path;
  uint64_t p = 0;
  uint64_t pmax = 0;
  double B = 0;
  double u = 0.5;
  std::vector<double> schedule;
  std::vector<uint64_t> primes;
  uint64_t trials = 0;
  uint64_t seed = 0;
  uint64_t cap = 1000000;
  uint64_t guard = 1000000;
  uint64_t max_primes = 64;
  bool full_group = false;
  bool clear = false;
};

GeneratorSet gens_or_trivial(const CommonOpts& o, const CurveSpec& curve) {
  if (o.gens_path.empty()) return make_generator_set(curve, {}, {});
  return load_generator_set(o.gens_path, curve);
}

int run_count(const CommonOpts& o) {
  CurveSpec curve = parse_curve_file(o.curve_path);
  CacheStore cache(o.cache_path);
  OrderStore store(curve, o.cache_path.empty() ? nullptr : &cache, o.guard);
  if (o.p) {
    std::cout << record_line(curve.id, store.at(o.p)) << "\n";
    return 0;
  }
  for (uint64_t q : primes_up_to(o.pmax))
    if (good_reduction(curve, q)) std::cout << record_line(curve.id, store.at(q)) << "\n";
  return 0;
}

int run_structure(const CommonOpts& o) {
  CurveSpec curve = parse_curve_file(o.curve_path);
  CacheStore cache(o.cache_path);
  OrderStore store(curve, o.cache_path.empty() ? nullptr : &cache, o.guard);
  if (o.p) {
    std::cout << record_line(curve.id, *store.structure_at(o.p)) << "\n";
    return 0;
  }
  for (uint64_t q : primes_up_to(o.pmax))
    if (good_reduction(curve, q))
      std::cout << record_line(curve.id, *store.structure_at(q)) << "\n";
  return 0;
}

int run_sieve(const CommonOpts& o) {
  CurveSpec curve = parse_curve_file(o.curve_path);
  GeneratorSet gens = gens_or_trivial(o, curve);
  CacheStore cache(o.cache_path);
  OrderStore store(curve, o.cache_path.empty() ? nullptr : &cache, o.guard);

  SieveOptions opts;
  opts.B = o.B;
  opts.primes = o.primes;
  opts.max_primes = o.max_primes;
  opts.survivor_cap = o.cap;
  opts.structure_guard = o.guard;
  opts.store = &store;
  try {
    SieveReport rep = run_scharaschkin(curve, gens, opts);
    for (const std::string& line : record_lines(curve.id, rep)) std::cout << line << "\n";
    return 0;
  } catch (const StateExplosion& ex) {
    if (ex.partial)
      for (const std::string& line : record_lines(curve.id, *ex.partial))
        std::cout << line << "\n";
    throw;
  }
}

// Pulls S (and the claimed verdict, if present) out of a certificate
// produced by the sieve subcommand.
void parse_certificate(std::istream& in, std::vector<uint64_t>& primes, int& claimed_empty) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("sieve ", 0) != 0) continue;
    std::stringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      if (tok.rfind("primes=", 0) == 0) {
        std::string list = tok.substr(7);
        if (list != "-") {
          std::stringstream ps(list);
          std::string q;
          while (std::getline(ps, q, ',')) primes.push_back(std::stoull(q));
        }
      } else if (tok.rfind("verdict=", 0) == 0) {
        claimed_empty = tok.substr(8) == "Obstructed" ? 1 : 0;
      }
    }
    return;
  }
  throw ParseError("no 'sieve' record found in the certificate input");
}

int run_certify(const CommonOpts& o) {
  CurveSpec curve = parse_curve_file(o.curve_path);
  GeneratorSet gens = gens_or_trivial(o, curve);

  std::vector<uint64_t> primes = o.primes;
  int claimed_empty = -1;
  if (primes.empty()) parse_certificate(std::cin, primes, claimed_empty);

  bool empty = certify(curve, gens, primes, o.cap);
  Record rec("certify");
  rec.field("curve", curve.id).field("primes", primes).field("empty", (uint64_t)(empty ? 1 : 0));
  if (claimed_empty >= 0) {
    bool agrees = (claimed_empty == 1) == empty;
    rec.field("claimed", (uint64_t)claimed_empty).field("agrees", (uint64_t)(agrees ? 1 : 0));
    std::cout << rec.line() << "\n";
    if (!agrees) {
      std::cerr << "error: certificate verdict does not re-verify\n";
      return 1;
    }
    return 0;
  }
  std::cout << rec.line() << "\n";
  return 0;
}

int run_smoothness(const CommonOpts& o) {
  CurveSpec curve = parse_curve_file(o.curve_path);
  CacheStore cache(o.cache_path);
  OrderStore store(curve, o.cache_path.empty() ? nullptr : &cache, o.guard);
  std::cout << record_line(smooth_fraction(curve, o.B, o.u, &store)) << "\n";
  return 0;
}

int run_heuristic(const CommonOpts& o) {
  CurveSpec curve = parse_curve_file(o.curve_path);
  GeneratorSet gens = gens_or_trivial(o, curve);
  CacheStore cache(o.cache_path);
  OrderStore store(curve, o.cache_path.empty() ? nullptr : &cache, o.guard);

  EstimateOptions opts;
  opts.primes = o.primes;
  opts.max_primes = o.max_primes;
  opts.survivor_cap = o.cap;
  opts.structure_guard = o.guard;
  opts.mode = o.full_group ? SubsetMode::kFullGroup : SubsetMode::kCurveSized;
  opts.store = &store;
  for (double b : o.schedule) {
    TrialEstimate est = estimate_intersection_prob(curve, gens, b, o.trials, o.seed, opts);
    std::cout << record_line(est) << "\n";
  }
  return 0;
}

int run_cache(const CommonOpts& o) {
  CacheStore cache(o.cache_path);
  if (o.clear) {
    cache.clear();
    std::cout << Record("cache").field("path", o.cache_path).field("records", (uint64_t)0).line()
              << "\n";
    return 0;
  }
  std::cout << Record("cache")
                   .field("path", o.cache_path)
                   .field("records", (uint64_t)cache.size())
                   .line()
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Mordell-Weil sieve, obstruction certificates, and smoothness/intersection\n"
      "heuristics for hyperelliptic curves y^2 = f(x) with f monic of odd degree.\n"
      "Reports go to stdout as line-delimited key=value records."};
  app.require_subcommand(1);
  CommonOpts o;

  auto add_cache = [&](CLI::App* cmd) {
    cmd->add_option("--cache", o.cache_path, "persistent per-prime cache file");
  };
  auto add_curve = [&](CLI::App* cmd) {
    cmd->add_option("--curve", o.curve_path, "curve file: coefficients of f, constant first")
        ->required();
  };
  auto add_gens = [&](CLI::App* cmd) {
    cmd->add_option("--gens", o.gens_path,
                    "generators file (omitted: the trivial subgroup)");
  };

  CLI::App* count = app.add_subcommand("count", "point counts and Jacobian orders");
  add_curve(count);
  add_cache(count);
  count->add_option("--p", o.p, "a single good prime");
  count->add_option("--pmax", o.pmax, "all good primes up to this bound");
  count->add_option("--guard", o.guard, "enumeration guard");

  CLI::App* structure = app.add_subcommand("structure", "invariant factors of J(F_p)");
  add_curve(structure);
  add_cache(structure);
  structure->add_option("--p", o.p, "a single good prime");
  structure->add_option("--pmax", o.pmax, "all good primes up to this bound");
  structure->add_option("--guard", o.guard, "enumeration guard");

  CLI::App* sieve = app.add_subcommand("sieve", "run the Mordell-Weil sieve");
  add_curve(sieve);
  add_gens(sieve);
  add_cache(sieve);
  sieve->add_option("--B", o.B, "smoothness bound selecting S(B)");
  sieve->add_option("--primes", o.primes, "explicit primes, in order")->delimiter(',');
  sieve->add_option("--max-primes", o.max_primes, "truncate S after this many primes");
  sieve->add_option("--cap", o.cap, "survivor-set cap");
  sieve->add_option("--guard", o.guard, "enumeration guard");

  CLI::App* certify_cmd = app.add_subcommand(
      "certify", "re-verify a certificate (stdin) or an explicit prime set");
  add_curve(certify_cmd);
  add_gens(certify_cmd);
  certify_cmd->add_option("--primes", o.primes, "explicit primes")->delimiter(',');
  certify_cmd->add_option("--cap", o.cap, "image-closure cap");

  CLI::App* smoothness = app.add_subcommand("smoothness", "B^u-smooth fraction of orders");
  add_curve(smoothness);
  add_cache(smoothness);
  smoothness->add_option("--B", o.B, "prime bound")->required();
  smoothness->add_option("--u", o.u, "smoothness exponent in (0,1)")->required();
  smoothness->add_option("--guard", o.guard, "enumeration guard");

  CLI::App* heuristic = app.add_subcommand(
      "heuristic", "Monte Carlo intersection estimates over a B schedule");
  add_curve(heuristic);
  add_gens(heuristic);
  add_cache(heuristic);
  heuristic->add_option("--B", o.schedule, "B schedule (comma-separated)")
      ->delimiter(',')
      ->required();
  heuristic->add_option("--trials", o.trials, "trials per B")->required();
  heuristic->add_option("--seed", o.seed, "RNG seed (mandatory: no silent entropy)")
      ->required();
  heuristic->add_option("--max-primes", o.max_primes, "truncate S after this many primes");
  heuristic->add_option("--cap", o.cap, "survivor-set cap");
  heuristic->add_option("--guard", o.guard, "enumeration guard");
  heuristic->add_flag("--full-group", o.full_group,
                      "force subsets to the whole group (plumbing check)");

  CLI::App* cache_cmd = app.add_subcommand("cache", "inspect or clear the cache");
  cache_cmd->add_option("--cache", o.cache_path, "cache file")->required();
  cache_cmd->add_flag("--clear", o.clear, "truncate the cache");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(count)) return run_count(o);
    if (app.got_subcommand(structure)) return run_structure(o);
    if (app.got_subcommand(sieve)) return run_sieve(o);
    if (app.got_subcommand(certify_cmd)) return run_certify(o);
    if (app.got_subcommand(smoothness)) return run_smoothness(o);
    if (app.got_subcommand(heuristic)) return run_heuristic(o);
    if (app.got_subcommand(cache_cmd)) return run_cache(o);
  } catch (const mws::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
