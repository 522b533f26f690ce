#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qsteiner/graph.hpp"

namespace qsteiner {

/// Size of one minimum-finding search space, split into the part exponential in k (the
/// terminal-subset count) and the part polynomial in n (split sets, extra-vertex placements).
struct SearchShape {
  std::uint64_t driver = 1;
  std::uint64_t poly = 1;

  std::uint64_t size() const { return driver * poly; }
  friend auto operator<=>(const SearchShape&, const SearchShape&) = default;
};

struct LevelRecord {
  unsigned level = 0;
  std::uint64_t invocations = 0;
  std::uint64_t classical_evaluations = 0;  // sum of N
  std::uint64_t quantum_queries = 0;        // sum of ceil(c * sqrt(N))
  std::map<SearchShape, std::uint64_t> shapes;  // invocations per search-space shape

  friend bool operator==(const LevelRecord&, const LevelRecord&) = default;
};

/// ceil(sqrt(n)) computed in integers.
std::uint64_t ceil_sqrt(std::uint64_t n);

/// Query accounting for simulated Durr-Hoyer minimum finding: every invocation over a search
/// space of size N costs N classical evaluations and ceil(c * sqrt(N)) modeled quantum queries.
class QueryLedger {
 public:
  explicit QueryLedger(double dh_constant = 1.0);

  double dh_constant() const noexcept { return dh_constant_; }
  std::uint64_t modeled_queries(std::uint64_t n) const;

  void record(unsigned level, SearchShape shape, std::uint64_t count = 1);
  /// Adds another ledger's records; both must use the same dh_constant.
  void merge(const QueryLedger& other);

  std::span<const LevelRecord> levels() const noexcept { return levels_; }
  /// Record for `level`, or nullptr when nothing was recorded there.
  const LevelRecord* level(unsigned level) const;

  std::uint64_t total_invocations() const;
  std::uint64_t total_classical() const;
  std::uint64_t total_quantum() const;

  /// Leaf values read during the search, split by where they came from.
  std::uint64_t leaf_table_hits = 0;
  std::uint64_t leaf_fallbacks = 0;

  friend bool operator==(const QueryLedger&, const QueryLedger&) = default;

 private:
  LevelRecord& slot(unsigned level);

  double dh_constant_ = 1.0;
  std::vector<LevelRecord> levels_;  // sorted by level
};

template <class Key>
struct DhOutcome {
  Key argmin{};
  Weight value = kInfinity;
  std::size_t index = 0;
};

/// Simulated Durr-Hoyer minimum finding: exact exhaustive minimisation with ties resolved to the
/// smallest key, plus ledger accounting of one invocation over |domain| elements at `level`.
template <class Key, class Eval>
DhOutcome<Key> dh_min(std::span<const Key> domain, Eval&& evaluate, QueryLedger& ledger,
                      unsigned level) {
  if (domain.empty()) throw InvalidInput("minimum finding over an empty domain");
  ledger.record(level, SearchShape{domain.size(), 1});
  DhOutcome<Key> best{domain[0], evaluate(domain[0]), 0};
  for (std::size_t i = 1; i < domain.size(); ++i) {
    const Weight value = evaluate(domain[i]);
    if (value < best.value || (value == best.value && domain[i] < best.argmin)) {
      best = DhOutcome<Key>{domain[i], value, i};
    }
  }
  return best;
}

}  // namespace qsteiner
