#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "qsteiner/split_solver.hpp"

namespace qsteiner {

namespace {

Weight guarded(const SubtreeEvaluator& eval, const Graph& graph, const VertexSet& vertices) {
  if (vertices.size() <= 1) return 0;
  try {
    return eval(graph, vertices);
  } catch (const NoSteinerTree&) {
    return kInfinity;
  }
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
  std::vector<std::size_t> parent;
};

VertexSet endpoints(std::span<const Edge> edges) {
  std::vector<Vertex> ids;
  for (const Edge& e : edges) {
    ids.push_back(e.u);
    ids.push_back(e.v);
  }
  return VertexSet(std::move(ids));
}

// Number of connected components of the edge set, or nullopt when it has a cycle.
std::optional<std::size_t> forest_components(std::span<const Edge> edges) {
  const VertexSet vs = endpoints(edges);
  if (vs.empty()) return 0;
  UnionFind uf(vs.size());
  auto index = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
  };
  std::size_t components = vs.size();
  for (const Edge& e : edges) {
    if (!uf.unite(index(e.u), index(e.v))) return std::nullopt;
    --components;
  }
  return components;
}

TwoSplit make_split(std::vector<Edge> subtree, std::vector<Edge> forest, const VertexSet& k) {
  TwoSplit s;
  const VertexSet v1 = endpoints(subtree);
  const VertexSet v2 = endpoints(forest);
  s.split_nodes = v1.intersected(v2);
  s.k1 = k.intersected(v1).minus(s.split_nodes);
  s.k2 = k.intersected(v2).minus(s.split_nodes);
  s.subtree = std::move(subtree);
  s.forest = std::move(forest);
  return s;
}

Weight edge_weight(std::span<const Edge> edges) {
  Weight w = 0;
  for (const Edge& e : edges) w += e.w;
  return w;
}

}  // namespace

Weight split_term(const Graph& g, const VertexSet& k, const TerminalMask& k1, const VertexSet& a,
                  const SubtreeEvaluator& left_eval, const SubtreeEvaluator& right_eval) {
  if (k1.width() != k.size()) throw InvalidInput("K1 mask width must equal |K|");
  const VertexSet left_terms = to_vertex_set(k1, k.ids());
  const VertexSet k2 = k.minus(left_terms.united(a));

  const Weight left = guarded(left_eval, g, left_terms.united(a));
  if (a.empty()) return k2.empty() ? left : kInfinity;

  const ContractedGraph cg = contract(g, a);
  std::vector<Vertex> right_ids;
  for (Vertex t : k2) right_ids.push_back(cg.image_of(t));
  right_ids.push_back(cg.contracted_vertex);
  const Weight right = guarded(right_eval, cg.graph, VertexSet(std::move(right_ids)));
  return left + right;
}

SplitMinimum minimize_split_terms(const Graph& g, const VertexSet& k, unsigned a_cap,
                                  const SubtreeEvaluator& eval, std::optional<SizeWindow> window) {
  if (k.size() > TerminalMask::kMaxWidth) throw GuardExceeded("at most 64 terminals");
  const auto width = static_cast<unsigned>(k.size());
  const auto sets = bounded_subsets(g.vertex_count(), a_cap);
  SplitMinimum best;
  const std::uint64_t total = width == 64 ? 0 : std::uint64_t{1} << width;
  for (std::uint64_t bits = 0;; ++bits) {
    if (!window || window->contains(static_cast<unsigned>(std::popcount(bits)))) {
      const TerminalMask k1(bits, width);
      for (const VertexSet& a : sets) {
        const Weight w = split_term(g, k, k1, a, eval, eval);
        ++best.evaluated;
        if (w < best.value) {
          best.value = w;
          best.k1 = k1;
          best.a = a;
        }
      }
    }
    if (bits + 1 == total) break;
  }
  return best;
}

void for_each_2split(const SteinerTree& t, const VertexSet& k,
                     const std::function<void(const TwoSplit&)>& visit) {
  const std::size_t m = t.edges.size();
  if (m > kMaxSplitTreeEdges) {
    throw GuardExceeded("two-split enumeration is limited to " +
                        std::to_string(kMaxSplitTreeEdges) + " edges");
  }
  const std::uint64_t total = std::uint64_t{1} << m;
  std::vector<Edge> sub;
  std::vector<Edge> rest;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    sub.clear();
    rest.clear();
    for (std::size_t i = 0; i < m; ++i) {
      ((bits >> i) & 1 ? sub : rest).push_back(t.edges[i]);
    }
    // T is a tree, so any edge subset is acyclic; a subtree is one connected piece.
    if (!sub.empty() && forest_components(sub) != std::optional<std::size_t>{1}) continue;
    visit(make_split(sub, rest, k));
  }
}

std::vector<TwoSplit> enumerate_2splits(const SteinerTree& t, const VertexSet& k) {
  std::vector<TwoSplit> out;
  for_each_2split(t, k, [&](const TwoSplit& s) { out.push_back(s); });
  return out;
}

TwoSplitCheck check_two_split(const SteinerTree& t, const VertexSet& k, const TwoSplit& split) {
  TwoSplitCheck c;
  std::vector<Edge> all = split.subtree;
  all.insert(all.end(), split.forest.begin(), split.forest.end());
  std::sort(all.begin(), all.end());
  c.partitions_edges = all == t.edges;

  c.subtree_connected =
      split.subtree.empty() || forest_components(split.subtree) == std::optional<std::size_t>{1};
  c.forest_acyclic = forest_components(split.forest).has_value();

  const VertexSet v1 = endpoints(split.subtree);
  const VertexSet v2 = endpoints(split.forest);
  const VertexSet a = v1.intersected(v2);
  c.split_nodes_consistent = split.split_nodes == a &&
                             split.k1 == k.intersected(v1).minus(a) &&
                             split.k2 == k.intersected(v2).minus(a);
  c.split_nodes_nonempty = split.subtree.empty() || split.forest.empty() || !a.empty();
  return c;
}

SubOptimalityReport verify_lemma2(const Graph& g, const VertexSet& k, const SteinerTree& t,
                                  const TwoSplit& split) {
  (void)t;
  SubOptimalityReport r;
  const VertexSet left = split.k1.united(split.split_nodes);
  r.subtree_weight = edge_weight(split.subtree);
  r.subtree_optimum = left.size() <= 1 ? 0 : brute_force_steiner(g, left).weight;
  r.subtree_optimal = weights_equal(r.subtree_weight, r.subtree_optimum);

  r.forest_weight = edge_weight(split.forest);
  if (split.forest.empty() || split.split_nodes.empty()) {
    // With no shared vertices E' is empty (T is connected) or T1 is; nothing to compare.
    r.forest_vacuous = split.forest.empty();
    if (r.forest_vacuous) {
      r.forest_optimum = 0;
      r.forest_optimal = true;
      return r;
    }
    // T1 empty: E' is all of T and must be optimal for K in G.
    r.forest_optimum = brute_force_steiner(g, k).weight;
    r.forest_optimal = weights_equal(r.forest_weight, r.forest_optimum);
    return r;
  }
  const ContractedGraph cg = contract(g, split.split_nodes);
  std::vector<Vertex> ids;
  for (Vertex v : split.k2) ids.push_back(cg.image_of(v));
  ids.push_back(cg.contracted_vertex);
  const VertexSet right(std::move(ids));
  r.forest_optimum = right.size() <= 1 ? 0 : brute_force_steiner(cg.graph, right).weight;
  r.forest_optimal = weights_equal(r.forest_weight, r.forest_optimum);
  return r;
}

std::optional<TwoSplit> verify_theorem3(const Graph& g, const VertexSet& k, const SteinerTree& t,
                                        double alpha, double eta) {
  (void)g;
  if (!(alpha > 0.0 && alpha <= 0.5)) throw InvalidInput("alpha must lie in (0, 1/2]");
  if (!(eta > 0.0)) throw InvalidInput("eta must be positive");
  const double kd = static_cast<double>(k.size());
  const double lo = (alpha - eta) * kd - 1e-9;
  const double hi = (alpha + eta) * kd + 1e-9;
  const double cap = eta >= 1.0 ? 0.0 : std::ceil(std::log2(1.0 / eta) - 1e-12);
  std::optional<TwoSplit> witness;
  for_each_2split(t, k, [&](const TwoSplit& s) {
    if (witness) return;
    const auto k1 = static_cast<double>(s.k1.size());
    if (k1 >= lo && k1 <= hi && static_cast<double>(s.split_nodes.size()) <= cap) witness = s;
  });
  return witness;
}

}  // namespace qsteiner
