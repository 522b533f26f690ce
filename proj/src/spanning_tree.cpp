#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>

#include "qsteiner/graph.hpp"

namespace qsteiner {

namespace {

std::vector<Edge> edges_by_weight(const Graph& g) {
  std::vector<Edge> sorted(g.edges().begin(), g.edges().end());
  std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.w, a.u, a.v) < std::tie(b.w, b.u, b.v);
  });
  return sorted;
}

// Kruskal restricted to vertices flagged in `inside`; `count` is the number of such vertices.
std::optional<SteinerTree> kruskal(std::span<const Edge> sorted,
                                   const std::vector<char>& inside, std::size_t count,
                                   std::vector<std::size_t>& parent) {
  if (count <= 1) return SteinerTree{};
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Edge> chosen;
  chosen.reserve(count - 1);
  for (const Edge& e : sorted) {
    if (!inside[e.u] || !inside[e.v]) continue;
    std::size_t a = find(e.u);
    std::size_t b = find(e.v);
    if (a == b) continue;
    parent[a] = b;
    chosen.push_back(e);
    if (chosen.size() + 1 == count) break;
  }
  if (chosen.size() + 1 != count) return std::nullopt;
  return SteinerTree::from_edges(std::move(chosen));
}

}  // namespace

std::optional<SteinerTree> minimum_spanning_tree(const Graph& g, const VertexSet& s) {
  std::vector<char> inside(g.vertex_count(), 0);
  for (Vertex v : s) {
    if (!g.has_vertex(v)) throw InvalidInput("vertex " + std::to_string(v) + " out of range");
    inside[v] = 1;
  }
  std::vector<Edge> sorted = edges_by_weight(g);
  std::vector<std::size_t> parent(g.vertex_count());
  return kruskal(sorted, inside, s.size(), parent);
}

SteinerTree brute_force_steiner(const Graph& g, const VertexSet& k) {
  for (Vertex v : k) {
    if (!g.has_vertex(v)) throw InvalidInput("terminal " + std::to_string(v) + " out of range");
  }
  if (k.size() <= 1) return SteinerTree{};

  std::vector<Vertex> others;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (!k.contains(static_cast<Vertex>(v))) others.push_back(static_cast<Vertex>(v));
  }
  if (others.size() > kBruteForceMaxSteinerVertices) {
    throw GuardExceeded("brute-force Steiner oracle limited to " +
                        std::to_string(kBruteForceMaxSteinerVertices) + " non-terminals, got " +
                        std::to_string(others.size()));
  }
  if (!connects(g, k)) throw NoSteinerTree();

  const std::vector<Edge> sorted = edges_by_weight(g);
  std::vector<std::size_t> parent(g.vertex_count());
  std::vector<char> inside(g.vertex_count(), 0);
  for (Vertex t : k) inside[t] = 1;

  std::optional<SteinerTree> best;
  const std::uint64_t subsets = std::uint64_t{1} << others.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    std::size_t count = k.size();
    for (std::size_t i = 0; i < others.size(); ++i) {
      const bool on = (mask >> i) & 1U;
      inside[others[i]] = on ? 1 : 0;
      count += on ? 1 : 0;
    }
    auto tree = kruskal(sorted, inside, count, parent);
    if (tree && (!best || tree->weight < best->weight)) best = std::move(tree);
  }
  if (!best) throw NoSteinerTree();
  return *best;
}

}  // namespace qsteiner
