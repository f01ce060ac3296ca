#include "mws/records.hpp"

#include <cinttypes>
#include <cstdio>

namespace mws {

namespace {

std::string fmt_u64(uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%" PRIu64, v);
  return buf;
}

std::string fmt_joined(const std::vector<uint64_t>& v) {
  if (v.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += fmt_u64(v[i]);
  }
  return s;
}

}  // namespace

Record& Record::field(const std::string& key, uint64_t v) {
  fields_.emplace_back(key, fmt_u64(v));
  return *this;
}

Record& Record::field(const std::string& key, int64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%" PRId64, v);
  fields_.emplace_back(key, buf);
  return *this;
}

Record& Record::field(const std::string& key, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  fields_.emplace_back(key, buf);
  return *this;
}

Record& Record::field(const std::string& key, const mpz_class& v) {
  fields_.emplace_back(key, v.get_str());
  return *this;
}

Record& Record::field(const std::string& key, const std::string& v) {
  fields_.emplace_back(key, v);
  return *this;
}

Record& Record::field(const std::string& key, const std::vector<uint64_t>& v) {
  fields_.emplace_back(key, fmt_joined(v));
  return *this;
}

std::string Record::line() const {
  std::string s = kind_;
  for (const auto& [k, v] : fields_) {
    s += ' ';
    s += k;
    s += '=';
    s += v;
  }
  return s;
}

std::string record_line(uint64_t curve_id, const LocalCounts& lc) {
  std::string factors;
  if (lc.fact.factors.empty()) {
    factors = "-";
  } else {
    for (std::size_t i = 0; i < lc.fact.factors.size(); ++i) {
      if (i) factors += ',';
      factors += fmt_u64(lc.fact.factors[i].first) + ":" +
                 std::to_string(lc.fact.factors[i].second);
    }
  }
  return Record("counts")
      .field("curve", curve_id)
      .field("p", lc.p)
      .field("n1", lc.n1)
      .field("n2", lc.n2)
      .field("order", lc.order)
      .field("factors", factors)
      .line();
}

std::string record_line(uint64_t curve_id, const GroupStructure& gs) {
  return Record("structure")
      .field("curve", curve_id)
      .field("p", gs.p)
      .field("order", gs.order)
      .field("exponent", gs.exponent)
      .field("invariants", gs.invariant_factors)
      .line();
}

std::string record_line(const SmoothnessStats& st) {
  return Record("smoothness")
      .field("curve", st.curve_id)
      .field("B", st.B)
      .field("u", st.u)
      .field("total", (uint64_t)st.total)
      .field("smooth", (uint64_t)st.smooth)
      .field("skipped", (uint64_t)st.skipped)
      .field("fraction", st.fraction)
      .field("rho_baseline", st.rho_baseline)
      .line();
}

std::string record_line(const TrialEstimate& est) {
  return Record("estimate")
      .field("B", est.B)
      .field("primes", est.primes)
      .field("trials", (uint64_t)est.trials)
      .field("hits", (uint64_t)est.hits)
      .field("estimate", est.estimate)
      .field("log_I_bound", est.log_I_bound)
      .field("log_P", est.log_P)
      .line();
}

std::string record_line(const LcmBound& b) {
  return Record("lcm")
      .field("B", b.B)
      .field("pi_B", (uint64_t)b.pi_B)
      .field("m_max", b.m_max)
      .field("L", b.L)
      .field("log_L", b.log_L)
      .field("bound_log", b.bound_log)
      .field("divides", (uint64_t)(b.divides ? 1 : 0))
      .line();
}

std::vector<std::string> record_lines(uint64_t curve_id, const SieveReport& rep) {
  std::vector<std::string> out;
  out.push_back(Record("sieve")
                    .field("curve", curve_id)
                    .field("verdict", rep.verdict == Verdict::Obstructed
                                          ? std::string("Obstructed")
                                          : std::string("Inconclusive"))
                    .field("primes", rep.primes_used)
                    .field("modulus", rep.modulus)
                    .field("survivors", (uint64_t)rep.survivors.size())
                    .line());
  for (const StepStats& s : rep.steps)
    out.push_back(Record("local")
                      .field("p", s.p)
                      .field("order", s.order)
                      .field("exponent", s.exponent)
                      .field("invariants", s.invariants)
                      .field("n1", s.n1)
                      .field("modulus", s.modulus_after)
                      .field("candidates", (uint64_t)s.candidates)
                      .field("survivors", (uint64_t)s.survivors_after)
                      .field("elimination", s.elimination_ratio)
                      .line());
  // skip reasons may contain spaces: reason is always the last field
  for (const SkipRecord& s : rep.skipped)
    out.push_back(Record("skip").field("p", s.p).field("reason", s.reason).line());
  return out;
}

}  // namespace mws
