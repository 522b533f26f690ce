#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "qsteiner/errors.hpp"

namespace qsteiner {

using Vertex = std::uint32_t;
using Weight = double;

inline constexpr Weight kInfinity = std::numeric_limits<Weight>::infinity();

/// Absolute tolerance for weight equality in validators.
inline constexpr Weight kWeightTolerance = 1e-9;

inline bool weights_equal(Weight a, Weight b) {
  if (a == b) return true;  // covers matching infinities
  return (a > b ? a - b : b - a) <= kWeightTolerance;
}

/// Undirected edge, normalized so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  Weight w = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorted, duplicate-free list of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> ids);
  explicit VertexSet(std::vector<Vertex> ids);

  std::span<const Vertex> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(Vertex v) const;
  Vertex operator[](std::size_t i) const { return ids_[i]; }
  auto begin() const noexcept { return ids_.begin(); }
  auto end() const noexcept { return ids_.end(); }

  VertexSet united(const VertexSet& other) const;
  VertexSet minus(const VertexSet& other) const;
  VertexSet intersected(const VertexSet& other) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet& a, const VertexSet& b) { return a.ids_ <=> b.ids_; }

 private:
  std::vector<Vertex> ids_;
};

/// Fixed-width bit set over an indexed terminal ordering (at most 64 terminals).
class TerminalMask {
 public:
  static constexpr unsigned kMaxWidth = 64;

  constexpr TerminalMask() = default;
  TerminalMask(std::uint64_t bits, unsigned width);

  static TerminalMask empty(unsigned width) { return TerminalMask(0, width); }
  static TerminalMask full(unsigned width);
  static TerminalMask single(unsigned index, unsigned width);

  std::uint64_t bits() const noexcept { return bits_; }
  unsigned width() const noexcept { return width_; }
  unsigned count() const noexcept;
  bool none() const noexcept { return bits_ == 0; }
  bool test(unsigned index) const;
  /// Index of the lowest set bit; the mask must be nonempty.
  unsigned lowest() const;
  bool is_subset_of(const TerminalMask& other) const;

  TerminalMask operator|(const TerminalMask& o) const;
  TerminalMask operator&(const TerminalMask& o) const;
  /// Set difference.
  TerminalMask operator-(const TerminalMask& o) const;
  TerminalMask complement() const;

  friend bool operator==(const TerminalMask&, const TerminalMask&) = default;
  friend auto operator<=>(const TerminalMask&, const TerminalMask&) = default;

 private:
  void check_width(const TerminalMask& o) const;

  std::uint64_t bits_ = 0;
  unsigned width_ = 0;
};

/// Subset of `ordering` selected by `mask` (mask width must equal ordering size).
VertexSet to_vertex_set(const TerminalMask& mask, std::span<const Vertex> ordering);
/// Mask of `subset` within `ordering`; throws InvalidInput for ids not in the ordering.
TerminalMask to_mask(const VertexSet& subset, std::span<const Vertex> ordering);

/// Undirected graph with strictly positive edge weights, no self-loops and no parallel edges.
/// Immutable after construction.
class Graph {
 public:
  struct Neighbor {
    Vertex to;
    Weight w;
    std::size_t edge;
  };

  Graph() = default;

  /// Validates and deduplicates `edges`. Parallel edges keep the minimum weight.
  static Graph build(std::size_t n, std::span<const Edge> edges);

  std::size_t vertex_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  /// Edges sorted by (u, v) with u < v.
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const Neighbor> neighbors(Vertex v) const;
  std::optional<std::size_t> find_edge(Vertex a, Vertex b) const;
  bool has_vertex(Vertex v) const noexcept { return v < n_; }
  Weight total_weight() const;

  /// Copy with one extra edge (or a lowered weight on an existing one).
  Graph with_edge(Edge e) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
};

/// True when every vertex of `vertices` lies in one connected component of `g`.
bool connects(const Graph& g, const VertexSet& vertices);

/// G/A: the vertices of A replaced by a single vertex v_A.
///
/// New ids follow the original order with A's slots removed; v_A takes the last id.
/// `origin` maps every new id to the set of original vertices it stands for, so nested
/// contractions ((G/A)/A') compose provenance back to the base graph.
struct ContractedGraph {
  Graph graph;
  Vertex contracted_vertex = 0;
  std::vector<VertexSet> origin;

  /// New id of the vertex whose origin contains original vertex `v`.
  Vertex image_of(Vertex original) const;
};

/// Wraps `g` as the identity contraction (every vertex its own origin). contracted_vertex is
/// meaningless for it.
ContractedGraph identity_contraction(const Graph& g);

ContractedGraph contract(const Graph& g, const VertexSet& a);
/// Contracts `a` (ids of `cg.graph`) and composes provenance with `cg.origin`.
ContractedGraph contract(const ContractedGraph& cg, const VertexSet& a);

/// Edge set of a tree together with its total weight.
struct SteinerTree {
  std::vector<Edge> edges;  // sorted, normalized
  Weight weight = 0;

  static SteinerTree from_edges(std::vector<Edge> edges);
  VertexSet vertices() const;
};

struct TreeCheck {
  bool acyclic = false;
  bool connected = false;
  bool spans_terminals = false;
  bool weight_consistent = false;
  bool edges_in_graph = false;
  bool leaves_are_terminals = false;

  bool ok() const {
    return acyclic && connected && spans_terminals && weight_consistent && edges_in_graph &&
           leaves_are_terminals;
  }
};

/// Checks every SteinerTree invariant of `tree` against graph `g` and terminal set `k`.
TreeCheck check_steiner_tree(const Graph& g, const VertexSet& k, const SteinerTree& tree);

/// All-pairs shortest-path weights with next-hop reconstruction.
class DistanceMatrix {
 public:
  explicit DistanceMatrix(const Graph& g);

  std::size_t size() const noexcept { return n_; }
  Weight operator()(Vertex a, Vertex b) const { return dist_[a * n_ + b]; }
  /// Vertices of a shortest a-b path, both ends included; empty when unreachable.
  std::vector<Vertex> path(Vertex a, Vertex b) const;
  /// Edges of the path returned by path(), weights taken from `g`.
  std::vector<Edge> path_edges(const Graph& g, Vertex a, Vertex b) const;

 private:
  std::size_t n_ = 0;
  std::vector<Weight> dist_;
  std::vector<Vertex> next_;
};

DistanceMatrix all_pairs_shortest_paths(const Graph& g);

/// Minimum spanning tree of the induced subgraph G[S]; nullopt when G[S] is disconnected.
/// Ties are broken on the (w, u, v) tuple.
std::optional<SteinerTree> minimum_spanning_tree(const Graph& g, const VertexSet& s);

inline constexpr std::size_t kBruteForceMaxSteinerVertices = 22;

/// Exact minimum Steiner tree by enumerating every set of non-terminals and taking the
/// lightest spanning tree of K plus that set. Throws NoSteinerTree when the terminals are
/// disconnected and GuardExceeded when |V \ K| > 22.
SteinerTree brute_force_steiner(const Graph& g, const VertexSet& k);

}  // namespace qsteiner
