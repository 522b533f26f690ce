#include "qsteiner/ledger.hpp"

#include <algorithm>
#include <cmath>

namespace qsteiner {

std::uint64_t ceil_sqrt(std::uint64_t n) {
  // floor root first; r stays below 2^32 so the squares cannot overflow
  constexpr std::uint64_t kMaxRoot = 0xFFFFFFFFULL;
  auto r = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n))), kMaxRoot);
  while (r * r > n) --r;
  while (r < kMaxRoot && (r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : r + 1;
}

QueryLedger::QueryLedger(double dh_constant) : dh_constant_(dh_constant) {
  if (!(dh_constant > 0.0)) throw InvalidInput("dh_constant must be positive");
}

std::uint64_t QueryLedger::modeled_queries(std::uint64_t n) const {
  if (dh_constant_ == 1.0) return ceil_sqrt(n);
  const long double scaled = static_cast<long double>(dh_constant_) * std::sqrt(static_cast<long double>(n));
  return static_cast<std::uint64_t>(std::ceil(scaled - 1e-12L));
}

LevelRecord& QueryLedger::slot(unsigned level) {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), level,
                             [](const LevelRecord& r, unsigned l) { return r.level < l; });
  if (it == levels_.end() || it->level != level) {
    LevelRecord fresh;
    fresh.level = level;
    it = levels_.insert(it, std::move(fresh));
  }
  return *it;
}

void QueryLedger::record(unsigned level, SearchShape shape, std::uint64_t count) {
  if (count == 0) return;
  LevelRecord& r = slot(level);
  const std::uint64_t n = shape.size();
  r.invocations += count;
  r.classical_evaluations += count * n;
  r.quantum_queries += count * modeled_queries(n);
  r.shapes[shape] += count;
}

void QueryLedger::merge(const QueryLedger& other) {
  if (other.dh_constant_ != dh_constant_) throw InvalidInput("ledgers use different dh constants");
  for (const LevelRecord& r : other.levels_) {
    LevelRecord& mine = slot(r.level);
    mine.invocations += r.invocations;
    mine.classical_evaluations += r.classical_evaluations;
    mine.quantum_queries += r.quantum_queries;
    for (const auto& [shape, count] : r.shapes) mine.shapes[shape] += count;
  }
  leaf_table_hits += other.leaf_table_hits;
  leaf_fallbacks += other.leaf_fallbacks;
}

const LevelRecord* QueryLedger::level(unsigned level) const {
  for (const LevelRecord& r : levels_) {
    if (r.level == level) return &r;
  }
  return nullptr;
}

std::uint64_t QueryLedger::total_invocations() const {
  std::uint64_t total = 0;
  for (const LevelRecord& r : levels_) total += r.invocations;
  return total;
}

std::uint64_t QueryLedger::total_classical() const {
  std::uint64_t total = 0;
  for (const LevelRecord& r : levels_) total += r.classical_evaluations;
  return total;
}

std::uint64_t QueryLedger::total_quantum() const {
  std::uint64_t total = 0;
  for (const LevelRecord& r : levels_) total += r.quantum_queries;
  return total;
}

}  // namespace qsteiner
