#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qsteiner/graph.hpp"

namespace qsteiner {

/// How a table entry W(X ∪ {p}) was obtained.
struct DwBackpointer {
  enum class Kind : std::uint8_t { kEmpty, kPath, kMerge };

  Kind kind = Kind::kEmpty;
  /// kPath: the single terminal of X. kMerge: the vertex where the two subtrees meet.
  Vertex via = 0;
  /// kMerge: the part X' (the other part is X \ X'); always contains X's lowest terminal.
  std::uint32_t split = 0;
};

/// Dreyfus-Wagner table: entries W(X ∪ {p}) for every terminal subset X with |X| <= mask_cap
/// and every vertex p.
///
/// Masks are processed by increasing size, then mask value, then vertex id. Each entry for
/// |X| >= 2 is min over p' and X' of d(p, p') + W(X' ∪ {p'}) + W((X \ X') ∪ {p'}), where only
/// the half X' containing X's lowest terminal is enumerated.
class DwTable {
 public:
  static constexpr unsigned kMaxTerminals = 24;

  /// Duplicate vertices in `terminals` are allowed (needed after contractions).
  static DwTable build(const Graph& g, std::span<const Vertex> terminals, unsigned mask_cap);
  static DwTable build(const Graph& g, const DistanceMatrix& dist, std::span<const Vertex> terminals,
                       unsigned mask_cap);

  const Graph& graph() const noexcept { return graph_; }
  const DistanceMatrix& distances() const noexcept { return dist_; }
  std::span<const Vertex> terminals() const noexcept { return terminals_; }
  unsigned width() const noexcept { return static_cast<unsigned>(terminals_.size()); }
  unsigned mask_cap() const noexcept { return mask_cap_; }

  /// Number of terminal masks held: sum over i <= mask_cap of C(width, i).
  std::size_t mask_count() const noexcept { return masks_.size(); }
  /// Masks in processing order.
  std::span<const std::uint64_t> masks() const noexcept { return masks_; }

  bool contains(TerminalMask x, Vertex p) const;
  /// W(X ∪ {p}); throws InvalidInput for a key outside the table.
  Weight weight(TerminalMask x, Vertex p) const;
  const DwBackpointer& backpointer(TerminalMask x, Vertex p) const;

  /// W(X) for |X| <= mask_cap + 1, read from entry (X minus its lowest terminal, that terminal).
  Weight subset_weight(TerminalMask x) const;
  bool has_subset(TerminalMask x) const;

  SteinerTree reconstruct(TerminalMask x, Vertex p) const;
  SteinerTree reconstruct_subset(TerminalMask x) const;

 private:
  std::size_t slot(std::uint64_t bits) const;
  void collect(std::uint64_t bits, Vertex p, std::vector<Edge>& out) const;

  Graph graph_;
  DistanceMatrix dist_{Graph{}};
  std::vector<Vertex> terminals_;
  unsigned mask_cap_ = 0;
  std::vector<std::uint64_t> masks_;
  std::vector<std::int32_t> slot_of_mask_;
  std::vector<Weight> weights_;
  std::vector<DwBackpointer> backs_;
};

/// Exact minimum Steiner tree via the full Dreyfus-Wagner recursion.
/// Throws NoSteinerTree for disconnected terminals and InvalidInput for an empty K.
SteinerTree dw_solve(const Graph& g, const VertexSet& k);

/// Table of W(X) for every X ⊆ K with |X| <= ceil(alpha * k); alpha in (0, 1/2].
DwTable dw_bounded(const Graph& g, const VertexSet& k, double alpha);

/// ceil(alpha * k) with a small tolerance so that e.g. 0.5 * 8 stays 4.
unsigned bounded_size_cap(double alpha, std::size_t k);

/// Classical precomputation for the hybrid solver: W_G(X ∪ A) and W_{G/A}(X ∪ {v_A}) for all
/// terminal masks X with |X| <= size cap and all A ⊆ V with |A| <= a_cap.
class Step1Tables {
 public:
  struct Config {
    double beta = 0.28325;
    double epsilon = 0.25;
    unsigned a_cap = 2;
    unsigned levels = 3;
  };

  Step1Tables(const Graph& g, const VertexSet& k, const Config& config);

  const Config& config() const noexcept { return config_; }
  unsigned size_cap() const noexcept { return size_cap_; }
  unsigned a_cap() const noexcept { return config_.a_cap; }
  std::span<const Vertex> terminals() const noexcept { return terminals_; }
  /// Every admissible split set A, ordered by size then lexicographically (∅ first).
  std::span<const VertexSet> split_sets() const noexcept { return split_sets_; }

  bool has_key(TerminalMask x, const VertexSet& a) const;
  /// W_G(X ∪ A).
  Weight weight_with_set(TerminalMask x, const VertexSet& a) const;
  /// W_{G/A}(X ∪ {v_A}); A must be nonempty.
  Weight weight_contracted(TerminalMask x, const VertexSet& a) const;
  /// Tree in G.
  SteinerTree reconstruct_with_set(TerminalMask x, const VertexSet& a) const;
  /// Tree in G/A (ids of contracted(a).graph).
  SteinerTree reconstruct_contracted(TerminalMask x, const VertexSet& a) const;
  const ContractedGraph& contracted(const VertexSet& a) const;

  /// Number of stored (X, A) weight pairs.
  std::size_t entry_count() const;

 private:
  struct PerSet {
    VertexSet a;
    DwTable in_graph;  // terminals: K then A \ K
    std::optional<ContractedGraph> contracted;
    std::optional<DwTable> in_contracted;  // terminals: images of K then v_A
  };

  std::size_t index_of(const VertexSet& a) const;
  std::uint64_t with_set_bits(TerminalMask x, const PerSet& entry) const;

  Config config_;
  unsigned size_cap_ = 0;
  std::vector<Vertex> terminals_;
  std::vector<VertexSet> split_sets_;
  std::vector<PerSet> tables_;
};

/// ceil(((1 - beta) / 2^(levels-1) + 15 epsilon) * k), clipped to k.
unsigned step1_size_cap(std::size_t k, double beta, double epsilon, unsigned levels = 3);
/// ceil(log2(1 / epsilon)).
unsigned split_set_bound(double epsilon);

/// Validates parameters and builds Step1Tables. Throws InvalidInput when beta is outside (0, 1/2],
/// epsilon outside (0, 1), or a_cap > ceil(log2(1/epsilon)).
Step1Tables precompute_step1(const Graph& g, const VertexSet& k, double beta, double epsilon,
                             unsigned a_cap, unsigned levels = 3);

/// All subsets of {0..n-1} with at most `cap` elements, ordered by size then lexicographically.
std::vector<VertexSet> bounded_subsets(std::size_t n, unsigned cap);

}  // namespace qsteiner
