#pragma once
#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mws/cache.hpp"
#include "mws/heuristic.hpp"
#include "mws/sieve.hpp"

namespace mws {

// One line-delimited report record: a kind tag followed by key=value
// fields in insertion order (the order is part of the output contract --
// plots and diffs rely on it).  Doubles are printed with %.9g, lists
// comma-joined with "-" for empty, matching the cache file conventions.
class Record {
 public:
  explicit Record(std::string kind) : kind_(std::move(kind)) {}

  Record& field(const std::string& key, uint64_t v);
  Record& field(const std::string& key, int64_t v);
  Record& field(const std::string& key, double v);
  Record& field(const std::string& key, const mpz_class& v);
  Record& field(const std::string& key, const std::string& v);
  Record& field(const std::string& key, const std::vector<uint64_t>& v);

  std::string line() const;  // "kind k1=v1 k2=v2 ..."

 private:
  std::string kind_;
  std::vector<std::pair<std::string, std::string>> fields_;
};

// Canonical renderings of the library's report types, one line each
// (the sieve report renders as a header plus per-prime lines).
std::string record_line(uint64_t curve_id, const LocalCounts& lc);
std::string record_line(uint64_t curve_id, const GroupStructure& gs);
std::string record_line(const SmoothnessStats& st);
std::string record_line(const TrialEstimate& est);
std::string record_line(const LcmBound& b);
std::vector<std::string> record_lines(uint64_t curve_id, const SieveReport& rep);

}  // namespace mws
