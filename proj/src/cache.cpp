#include "mws/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mws/jacobian.hpp"

namespace mws {

namespace {

std::string join_factors(const std::vector<std::pair<uint64_t, int>>& fs) {
  if (fs.empty()) return "-";
  std::ostringstream os;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) os << ',';
    os << fs[i].first << ':' << fs[i].second;
  }
  return os.str();
}

std::string join_list(const std::vector<uint64_t>& xs) {
  if (xs.empty()) return "-";
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ',';
    os << xs[i];
  }
  return os.str();
}

bool split_kv(const std::string& tok, std::string& k, std::string& v) {
  auto eq = tok.find('=');
  if (eq == std::string::npos || eq == 0) return false;
  k = tok.substr(0, eq);
  v = tok.substr(eq + 1);
  return !v.empty();
}

bool parse_u64(const std::string& s, uint64_t& out) {
  if (s.empty()) return false;
  uint64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    if (v > (UINT64_MAX - (c - '0')) / 10) return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

}  // namespace

std::string format_record(const CacheRecord& r) {
  std::ostringstream os;
  os << "schema=" << r.schema << " curve=" << r.curve << " p=" << r.p << " n1=" << r.n1
     << " n2=" << r.n2 << " order=" << r.order << " factors=" << join_factors(r.factors)
     << " invariants=" << join_list(r.invariants);
  return os.str();
}

std::optional<CacheRecord> parse_record(const std::string& line) {
  std::istringstream is(line);
  std::string tok, k, v;
  CacheRecord r;
  unsigned seen = 0;
  while (is >> tok) {
    if (!split_kv(tok, k, v)) return std::nullopt;
    uint64_t u = 0;
    if (k == "schema") {
      if (!parse_u64(v, u) || u != (uint64_t)kCacheSchema) return std::nullopt;
      r.schema = (int)u;
      seen |= 1;
    } else if (k == "curve") {
      if (!parse_u64(v, u)) return std::nullopt;
      r.curve = u;
      seen |= 2;
    } else if (k == "p") {
      if (!parse_u64(v, u)) return std::nullopt;
      r.p = u;
      seen |= 4;
    } else if (k == "n1") {
      if (!parse_u64(v, u) || u > (uint64_t)INT64_MAX) return std::nullopt;
      r.n1 = (int64_t)u;
      seen |= 8;
    } else if (k == "n2") {
      if (!parse_u64(v, u) || u > (uint64_t)INT64_MAX) return std::nullopt;
      r.n2 = (int64_t)u;
      seen |= 16;
    } else if (k == "order") {
      if (!parse_u64(v, u) || u == 0) return std::nullopt;
      r.order = u;
      seen |= 32;
    } else if (k == "factors") {
      seen |= 64;
      if (v == "-") continue;
      std::istringstream fs(v);
      std::string part;
      while (std::getline(fs, part, ',')) {
        auto colon = part.find(':');
        if (colon == std::string::npos) return std::nullopt;
        uint64_t q = 0, e = 0;
        if (!parse_u64(part.substr(0, colon), q) || !parse_u64(part.substr(colon + 1), e))
          return std::nullopt;
        if (q < 2 || e == 0 || e > 64) return std::nullopt;
        r.factors.emplace_back(q, (int)e);
      }
    } else if (k == "invariants") {
      seen |= 128;
      if (v == "-") continue;
      std::istringstream fs(v);
      std::string part;
      while (std::getline(fs, part, ',')) {
        uint64_t d = 0;
        if (!parse_u64(part, d) || d < 2) return std::nullopt;
        r.invariants.push_back(d);
      }
    } else {
      return std::nullopt;
    }
  }
  if (seen != 255) return std::nullopt;
  return r;
}

bool record_consistent(const CacheRecord& r, int genus) {
  if (r.p < 3 || !is_prime_u64(r.p)) return false;
  // Weil bounds, exact in integers: (p+1-N1)^2 <= 4 g^2 p, |p^2+1-N2| <= 2 g p.
  __int128 a1 = (__int128)r.p + 1 - r.n1;
  if (a1 * a1 > (__int128)4 * genus * genus * r.p) return false;
  if (r.n2 != 0) {
    __int128 p2 = (__int128)r.p * r.p;
    __int128 d2 = p2 + 1 - r.n2;
    if (d2 < 0) d2 = -d2;
    if (d2 > (__int128)2 * genus * r.p) return false;
  }
  __int128 prod = 1;
  uint64_t last_q = 0;
  for (auto [q, e] : r.factors) {
    if (q <= last_q || !is_prime_u64(q)) return false;
    last_q = q;
    for (int i = 0; i < e; ++i) {
      prod *= q;
      if (prod > (__int128)UINT64_MAX) return false;
    }
  }
  if (prod != (__int128)r.order) return false;
  if (!r.invariants.empty()) {
    __int128 iprod = 1;
    for (std::size_t i = 0; i < r.invariants.size(); ++i) {
      if (i && r.invariants[i] % r.invariants[i - 1] != 0) return false;
      iprod *= r.invariants[i];
    }
    if (iprod != (__int128)r.order) return false;
  }
  // order within the Weil interval [(sqrt p - 1)^2g, (sqrt p + 1)^2g].
  long double s = sqrtl((long double)r.p);
  long double lo = powl(s - 1, 2 * genus), hi = powl(s + 1, 2 * genus);
  long double o = (long double)r.order;
  return o >= lo * (1 - 1e-12L) - 1 && o <= hi * (1 + 1e-12L) + 1;
}

CacheStore::CacheStore(std::string path) : path_(std::move(path)) {
  if (path_.empty()) return;
  std::ifstream in(path_);
  if (!in) return;  // nothing cached yet
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto rec = parse_record(line);
    if (!rec) {
      std::fprintf(stderr, "cache: skipping corrupt line %zu of %s\n", lineno, path_.c_str());
      continue;
    }
    recs_[{rec->curve, rec->p}] = *rec;  // later lines win
  }
}

const CacheRecord* CacheStore::find(uint64_t curve_id, uint64_t p, int genus) {
  auto it = recs_.find({curve_id, p});
  if (it == recs_.end()) return nullptr;
  if (!record_consistent(it->second, genus)) {
    std::fprintf(stderr, "cache: discarding inconsistent record for curve=%llu p=%llu\n",
                 (unsigned long long)curve_id, (unsigned long long)p);
    recs_.erase(it);
    return nullptr;
  }
  return &it->second;
}

void CacheStore::put(const CacheRecord& r) {
  recs_[{r.curve, r.p}] = r;
  if (path_.empty()) return;
  int fd = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
  if (fd < 0) throw CacheError("cannot open cache file " + path_ + " for append");
  ::flock(fd, LOCK_EX);
  std::string line = format_record(r) + "\n";
  ssize_t n = ::write(fd, line.data(), line.size());
  ::flock(fd, LOCK_UN);
  ::close(fd);
  if (n != (ssize_t)line.size()) throw CacheError("short write to cache file " + path_);
}

void CacheStore::clear() {
  recs_.clear();
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::trunc);
  if (!out) throw CacheError("cannot truncate cache file " + path_);
}

OrderStore::OrderStore(const CurveSpec& curve, CacheStore* cache, uint64_t guard)
    : curve_(curve), cache_(cache), guard_(guard) {}

const LocalCounts& OrderStore::at(uint64_t p) {
  auto it = memo_.find(p);
  if (it != memo_.end()) return it->second;
  if (!good_reduction(curve_, p)) throw BadPrime("bad reduction at p=" + std::to_string(p));

  LocalCounts lc;
  lc.p = p;
  if (cache_) {
    if (const CacheRecord* rec = cache_->find(curve_.id, p, curve_.genus)) {
      lc.n1 = rec->n1;
      lc.n2 = rec->n2;
      lc.order = rec->order;
      lc.fact = Factorization{rec->order, rec->factors};
      return memo_.emplace(p, std::move(lc)).first->second;
    }
  }

  if (curve_.genus == 1) {
    lc.n1 = count_points(curve_, p);
    lc.n2 = 0;
    lc.order = (uint64_t)lc.n1;
  } else if (curve_.genus == 2) {
    PointCounts pc = point_counts(curve_, p);
    lc.n1 = pc.N1;
    lc.n2 = pc.N2;
    lc.order = order_via_zeta(pc);
  } else {
    lc.n1 = count_points(curve_, p);
    lc.n2 = 0;
    lc.order = enumerate_jacobian(curve_, p, guard_).size();
  }
  lc.fact = factorize(lc.order);

  if (cache_) {
    CacheRecord rec;
    rec.curve = curve_.id;
    rec.p = p;
    rec.n1 = lc.n1;
    rec.n2 = lc.n2;
    rec.order = lc.order;
    rec.factors = lc.fact.factors;
    cache_->put(rec);
  }
  return memo_.emplace(p, std::move(lc)).first->second;
}

std::shared_ptr<const GroupStructure> OrderStore::structure_at(uint64_t p) {
  auto it = structures_.find(p);
  if (it != structures_.end()) return it->second;
  auto gs = std::make_shared<const GroupStructure>(group_structure(curve_, p, guard_));
  structures_.emplace(p, gs);
  if (cache_) {
    const CacheRecord* rec = cache_->find(curve_.id, p, curve_.genus);
    if (!rec || rec->invariants.empty()) note_invariants(p, gs->invariant_factors);
  }
  return gs;
}

void OrderStore::note_invariants(uint64_t p, const std::vector<uint64_t>& invs) {
  if (!cache_) return;
  const LocalCounts& lc = at(p);
  CacheRecord rec;
  rec.curve = curve_.id;
  rec.p = p;
  rec.n1 = lc.n1;
  rec.n2 = lc.n2;
  rec.order = lc.order;
  rec.factors = lc.fact.factors;
  rec.invariants = invs;
  cache_->put(rec);
}

}  // namespace mws
