#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mws/curve.hpp"
#include "mws/factor.hpp"
#include "mws/jacobian.hpp"

namespace mws {

inline constexpr int kCacheSchema = 1;

// One cached local computation at a good prime.  n2 = 0 means "never
// computed" (the genus-1 and enumeration paths don't need it); invariants
// may be empty until a structure computation fills them in.
struct CacheRecord {
  int schema = kCacheSchema;
  uint64_t curve = 0;  // CurveSpec::id, a hash of the coefficient list
  uint64_t p = 0;
  int64_t n1 = 0;
  int64_t n2 = 0;
  uint64_t order = 0;
  std::vector<std::pair<uint64_t, int>> factors;  // of order, increasing primes
  std::vector<uint64_t> invariants;               // n_1 | ... | n_s, or empty
};

// Stable line format "schema=1 curve=... p=... n1=... n2=... order=...
// factors=q:e,... invariants=d,..." with "-" for an empty list.
std::string format_record(const CacheRecord& r);
std::optional<CacheRecord> parse_record(const std::string& line);

// Re-validation before use: Weil bounds on the counts, prime factors
// multiplying back to the order, and a divisible invariant chain with the
// right product.
bool record_consistent(const CacheRecord& r, int genus);

// Line-delimited persistent store.  Corrupt lines are skipped with a
// warning on stderr; stale (inconsistent) records are dropped at lookup
// time so callers recompute and append a fresh one.  An empty path keeps
// the store memory-only.
class CacheStore {
 public:
  CacheStore() = default;
  explicit CacheStore(std::string path);

  const CacheRecord* find(uint64_t curve_id, uint64_t p, int genus);
  void put(const CacheRecord& r);  // append under an advisory lock
  void clear();                    // truncate the file and forget everything

  std::size_t size() const { return recs_.size(); }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::map<std::pair<uint64_t, uint64_t>, CacheRecord> recs_;
};

// Per-curve memoizing facade over point counts, Jacobian orders, and their
// factorizations, optionally backed by a CacheStore.
struct LocalCounts {
  uint64_t p = 0;
  int64_t n1 = 0;
  int64_t n2 = 0;  // 0 when not computed
  uint64_t order = 1;
  Factorization fact;
};

class OrderStore {
 public:
  explicit OrderStore(const CurveSpec& curve, CacheStore* cache = nullptr,
                      uint64_t guard = 1000000);

  // Computes (or fetches) the counts at a good prime.  Throws BadPrime on
  // bad reduction and FactorizationFailure when the order resists the
  // factorizer.
  const LocalCounts& at(uint64_t p);

  // Full group structure at p, memoized (it is by far the most expensive
  // local computation).  Invariant factors are pushed into the backing
  // cache the first time they are computed.
  std::shared_ptr<const GroupStructure> structure_at(uint64_t p);

  // Records invariant factors for p in the backing cache, if any.
  void note_invariants(uint64_t p, const std::vector<uint64_t>& invs);

  const CurveSpec& curve() const { return curve_; }
  uint64_t guard() const { return guard_; }

 private:
  CurveSpec curve_;
  CacheStore* cache_ = nullptr;
  uint64_t guard_;
  std::map<uint64_t, LocalCounts> memo_;
  std::map<uint64_t, std::shared_ptr<const GroupStructure>> structures_;
};

}  // namespace mws
