#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

// Scratch directory shared by the whole test binary.
const std::string& scratch() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/mwscliXXXXXX";
    char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  return dir;
}

RunResult run_cli(const std::string& args, const std::string& input = "") {
  const char* bin = std::getenv("MWS_CLI_PATH");
  REQUIRE_MESSAGE(bin != nullptr, "MWS_CLI_PATH must point at the mws binary");
  const std::string in_path = scratch() + "/in.txt";
  const std::string out_path = scratch() + "/out.txt";
  const std::string err_path = scratch() + "/err.txt";
  spit(in_path, input);
  std::string cmd = std::string(bin) + " " + args + " < " + in_path + " > " + out_path +
                    " 2> " + err_path;
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::string curve_file(const std::string& name, const std::string& content) {
  std::string path = scratch() + "/" + name;
  spit(path, content);
  return path;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("usage errors exit 2, help exits 0") {
  CHECK(run_cli("").exit_code == 2);                       // missing subcommand
  CHECK(run_cli("frobnicate").exit_code == 2);             // unknown subcommand
  CHECK(run_cli("count").exit_code == 2);                  // missing --curve
  CHECK(run_cli("count --curve x --bogus 1").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("sieve --help").exit_code == 0);

  // seeds are mandatory for Monte Carlo runs
  auto c = curve_file("c_seed.txt", "1 0 0 0 0 1\n");
  CHECK(run_cli("heuristic --curve " + c + " --B 5 --trials 10").exit_code == 2);
}

TEST_CASE("count: records, empty table, bad prime") {
  auto c = curve_file("c2.txt", "# y^2 = x^5 + 1\n1 0 0 0 0 1\n");

  auto empty = run_cli("count --curve " + c + " --pmax 2");
  CHECK(empty.exit_code == 0);
  CHECK(empty.out.empty());

  auto one = run_cli("count --curve " + c + " --p 3");
  CHECK(one.exit_code == 0);
  CHECK(contains(one.out, "counts curve="));
  CHECK(contains(one.out, " p=3 "));
  CHECK(contains(one.out, " n1=4 "));
  CHECK(contains(one.out, " order=10 "));
  CHECK(contains(one.out, " factors=2:1,5:1"));

  auto bad = run_cli("count --curve " + c + " --p 5");  // 5 divides the discriminant
  CHECK(bad.exit_code == 1);
  CHECK(!bad.err.empty());
  CHECK(bad.out.empty());
}

TEST_CASE("curve file errors surface as computational errors") {
  auto even = curve_file("even.txt", "1 0 1\n");
  auto r = run_cli("count --curve " + even + " --p 3");
  CHECK(r.exit_code == 1);
  CHECK(!r.err.empty());

  auto junk = curve_file("junk.txt", "1 0 zebra 1\n");
  auto j = run_cli("count --curve " + junk + " --p 3");
  CHECK(j.exit_code == 1);
  CHECK(contains(j.err, "junk.txt:1"));

  auto missing = run_cli("count --curve " + scratch() + "/nope.txt --p 3");
  CHECK(missing.exit_code == 1);
}

TEST_CASE("structure records") {
  auto c = curve_file("c2s.txt", "1 0 0 0 0 1\n");
  auto r = run_cli("structure --curve " + c + " --p 3");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "structure curve="));
  CHECK(contains(r.out, " order=10 "));
  CHECK(contains(r.out, " exponent=10 "));
  CHECK(contains(r.out, " invariants=10"));
}

TEST_CASE("sieve soundness run and certify round trip") {
  auto c = curve_file("c2r.txt", "1 0 0 0 0 1\n");
  auto g = curve_file("g2r.txt",
                      "# rational torsion of y^2 = x^5 + 1\n"
                      "torsion point 0 1\n"
                      "torsion point -1 0\n");

  auto s = run_cli("sieve --curve " + c + " --gens " + g + " --B 15");
  CHECK(s.exit_code == 0);
  CHECK(contains(s.out, "sieve curve="));
  CHECK(contains(s.out, "verdict=Inconclusive"));
  CHECK(contains(s.out, "\nlocal p="));

  // the certificate re-verifies through the independent closure
  auto v = run_cli("certify --curve " + c + " --gens " + g, s.out);
  CHECK(v.exit_code == 0);
  CHECK(contains(v.out, "certify curve="));
  CHECK(contains(v.out, " empty=0 "));
  CHECK(contains(v.out, " agrees=1"));

  // a certificate claiming an obstruction that is not there fails
  auto fake = run_cli("certify --curve " + c + " --gens " + g,
                      "sieve curve=0 verdict=Obstructed primes=3,7 modulus=1 survivors=0\n");
  CHECK(fake.exit_code == 1);
  CHECK(contains(fake.out, " agrees=0"));

  // explicit primes skip the certificate entirely
  auto direct = run_cli("certify --curve " + c + " --gens " + g + " --primes 3,7");
  CHECK(direct.exit_code == 0);
  CHECK(contains(direct.out, " empty=0"));

  // garbage on stdin is a computational error
  CHECK(run_cli("certify --curve " + c, "nothing here\n").exit_code == 1);
}

TEST_CASE("smoothness record and determinism") {
  auto c = curve_file("c2m.txt", "1 0 0 0 0 1\n");
  auto a = run_cli("smoothness --curve " + c + " --B 40 --u 0.9");
  CHECK(a.exit_code == 0);
  CHECK(contains(a.out, "smoothness curve="));
  CHECK(contains(a.out, " total=10 "));
  CHECK(contains(a.out, " smooth=7 "));
  CHECK(contains(a.out, " fraction=0.7 "));
  auto b = run_cli("smoothness --curve " + c + " --B 40 --u 0.9");
  CHECK(a.out == b.out);

  CHECK(run_cli("smoothness --curve " + c + " --B 40 --u 1.5").exit_code == 1);
}

TEST_CASE("heuristic schedule: records, determinism, full-group mode") {
  auto c = curve_file("c2h.txt", "1 0 0 0 0 1\n");
  std::string base = "heuristic --curve " + c + " --trials 300 --seed 11 --B 5";

  auto a = run_cli(base);
  CHECK(a.exit_code == 0);
  CHECK(contains(a.out, "estimate B=5"));
  CHECK(contains(a.out, " trials=300 "));
  auto b = run_cli(base);
  CHECK(a.out == b.out);  // identical argv + seed => identical report

  auto full = run_cli(base + " --full-group");
  CHECK(full.exit_code == 0);
  CHECK(contains(full.out, " estimate=1 "));

  auto starved = run_cli("heuristic --curve " + c + " --trials 10 --seed 1 --B 1.5");
  CHECK(starved.exit_code == 1);  // S(B) empty
}

TEST_CASE("cache: transparency, inspection, clearing") {
  auto c = curve_file("c2c.txt", "1 0 0 0 0 1\n");
  std::string cache = scratch() + "/cache.txt";

  std::string cmd = "count --curve " + c + " --pmax 20 --cache " + cache;
  auto cold = run_cli(cmd);
  CHECK(cold.exit_code == 0);
  CHECK(!slurp(cache).empty());
  auto warm = run_cli(cmd);
  CHECK(warm.exit_code == 0);
  CHECK(cold.out == warm.out);  // byte-identical with a warm cache

  // structure fills in invariant factors; a second run reads them back
  std::string scmd = "structure --curve " + c + " --p 7 --cache " + cache;
  auto s1 = run_cli(scmd);
  auto s2 = run_cli(scmd);
  CHECK(s1.exit_code == 0);
  CHECK(s1.out == s2.out);

  auto info = run_cli("cache --cache " + cache);
  CHECK(info.exit_code == 0);
  CHECK(contains(info.out, "cache path="));
  CHECK(!contains(info.out, "records=0"));

  auto cleared = run_cli("cache --cache " + cache + " --clear");
  CHECK(cleared.exit_code == 0);
  CHECK(contains(cleared.out, " records=0"));
  CHECK(slurp(cache).empty());
}

TEST_CASE("generator file errors carry the line number") {
  auto c = curve_file("c2g.txt", "1 0 0 0 0 1\n");
  auto bad = curve_file("bad_gens.txt", "point 0 1\nwibble 1 2\n");
  auto r = run_cli("sieve --curve " + c + " --gens " + bad + " --B 10");
  CHECK(r.exit_code == 1);
  CHECK(contains(r.err, "bad_gens.txt:2"));

  auto off = curve_file("off_gens.txt", "point 1 1\n");  // 1^2 != f(1) = 2
  auto q = run_cli("sieve --curve " + c + " --gens " + off + " --B 10");
  CHECK(q.exit_code == 1);
  CHECK(contains(q.err, "off_gens.txt:1"));
}
