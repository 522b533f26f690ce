#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qsteiner/dreyfus_wagner.hpp"
#include "qsteiner/graph.hpp"
#include "qsteiner/ledger.hpp"

namespace qsteiner {

/// Parameters of the nested minimum-finding search.
struct SplitParams {
  unsigned levels = 3;
  /// Split fraction per level, relative to the subproblem. Empty means 1/2 on every level
  /// except the last, which uses beta.
  std::vector<double> alphas;
  double beta = 0.28325;
  double epsilon = 0.25;
  unsigned a_cap = 2;
  double dh_constant = 1.0;
  /// Reuse solved subproblems. Their recorded sub-ledgers are replayed on reuse, so the ledger
  /// is identical either way; only the running time changes.
  bool memoize = true;
  unsigned max_widenings = 64;

  std::vector<double> effective_alphas() const;
  /// Throws InvalidInput on out-of-range values.
  void validate() const;
};

/// Inclusive range of admissible |K'| at one level.
struct SizeWindow {
  unsigned lo = 0;
  unsigned hi = 0;

  bool contains(unsigned s) const { return lo <= s && s <= hi; }
  friend bool operator==(const SizeWindow&, const SizeWindow&) = default;
};

/// Window for |K'| at `level` (1-based) of a k-terminal instance: (t - s)k <= |K'| <= (t + s)k
/// where t = alpha_level / 2^(level-1), s = epsilon on level 1 and 15 epsilon below it. A window
/// holding no integer collapses to floor(t k). `slack` widens both ends by that many terminals.
SizeWindow level_window(const SplitParams& params, unsigned level, std::size_t k, unsigned slack = 0);

struct Widening {
  unsigned slack = 0;
  unsigned a_cap = 0;
  std::string reason;
};

struct HybridResult {
  SteinerTree tree;
  Weight value = kInfinity;  // minimum found by the search; equals tree.weight when exact
  QueryLedger ledger;
  SplitParams params;  // as finally run, after any widening
  unsigned slack = 0;
  std::vector<Widening> widenings;
  std::size_t step1_size_cap = 0;
  std::size_t step1_entries = 0;
};

/// Minimum Steiner tree by nested minimum finding over the two-split recursion, with the
/// deepest level reading precomputed Dreyfus-Wagner values. Throws NoSteinerTree for
/// disconnected terminals, InvalidInput for bad parameters, GuardExceeded for n > 64.
HybridResult hybrid_solve(const Graph& g, const VertexSet& k, const SplitParams& params = {});

// ---- the two-split recursion on its own ----

/// Weight of a minimum Steiner tree of `vertices` in `graph`, or kInfinity when none exists.
using SubtreeEvaluator = std::function<Weight(const Graph& graph, const VertexSet& vertices)>;

/// W_G(K1 ∪ A) + W_{G/A}(K2 ∪ {v_A}) with K2 = K \ (K1 ∪ A), evaluated through the supplied
/// callbacks. With A empty the right term is 0 when K2 is empty and kInfinity otherwise.
Weight split_term(const Graph& g, const VertexSet& k, const TerminalMask& k1, const VertexSet& a,
                  const SubtreeEvaluator& left_eval, const SubtreeEvaluator& right_eval);

struct SplitMinimum {
  Weight value = kInfinity;
  TerminalMask k1;
  VertexSet a;
  std::uint64_t evaluated = 0;
};

/// Minimum of split_term over every K1 ⊆ K with |K1| in `window` (all sizes when absent) and
/// every A ⊆ V with |A| <= a_cap.
SplitMinimum minimize_split_terms(const Graph& g, const VertexSet& k, unsigned a_cap,
                                  const SubtreeEvaluator& eval,
                                  std::optional<SizeWindow> window = std::nullopt);

// ---- two-split validation ----

/// Edge-disjoint partition of a tree into a subtree and a subforest.
struct TwoSplit {
  std::vector<Edge> subtree;  // T1
  std::vector<Edge> forest;   // E'
  VertexSet split_nodes;      // A = V(T1) ∩ V(E')
  VertexSet k1;               // K ∩ V(T1) \ A
  VertexSet k2;               // K ∩ V(E') \ A
};

inline constexpr std::size_t kMaxSplitTreeEdges = 24;

/// Calls `visit` for every two-split, in order of the subtree's edge-subset bitmask.
/// Throws GuardExceeded above 24 edges.
void for_each_2split(const SteinerTree& t, const VertexSet& k,
                     const std::function<void(const TwoSplit&)>& visit);
std::vector<TwoSplit> enumerate_2splits(const SteinerTree& t, const VertexSet& k);

struct TwoSplitCheck {
  bool partitions_edges = false;
  bool subtree_connected = false;
  bool forest_acyclic = false;
  bool split_nodes_consistent = false;
  bool split_nodes_nonempty = false;  // required when both parts are nonempty

  bool ok() const {
    return partitions_edges && subtree_connected && forest_acyclic && split_nodes_consistent &&
           split_nodes_nonempty;
  }
};

TwoSplitCheck check_two_split(const SteinerTree& t, const VertexSet& k, const TwoSplit& split);

struct SubOptimalityReport {
  Weight subtree_weight = 0;
  Weight subtree_optimum = 0;
  Weight forest_weight = 0;
  Weight forest_optimum = 0;
  bool subtree_optimal = false;
  bool forest_optimal = false;
  bool forest_vacuous = false;

  bool ok() const { return subtree_optimal && forest_optimal; }
};

/// For an optimal tree T: T1 must be optimal for K1 ∪ A in G and E'/A optimal for K2 ∪ {v_A}
/// in G/A. Both optima come from brute_force_steiner.
SubOptimalityReport verify_lemma2(const Graph& g, const VertexSet& k, const SteinerTree& t,
                                  const TwoSplit& split);

/// First two-split (in enumeration order) with (alpha - eta)k <= |K1| <= (alpha + eta)k and
/// |A| <= ceil(log2(1/eta)); nullopt when none exists.
std::optional<TwoSplit> verify_theorem3(const Graph& g, const VertexSet& k, const SteinerTree& t,
                                        double alpha, double eta);

}  // namespace qsteiner
