#include <algorithm>
#include <limits>

#include "qsteiner/graph.hpp"

namespace qsteiner {

namespace {
constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
}

// Floyd-Warshall with a next-hop matrix. Only strict improvements replace a next hop, so
// path reconstruction is deterministic for a given graph.
DistanceMatrix::DistanceMatrix(const Graph& g) : n_(g.vertex_count()) {
  dist_.assign(n_ * n_, kInfinity);
  next_.assign(n_ * n_, kNoVertex);
  for (std::size_t v = 0; v < n_; ++v) {
    dist_[v * n_ + v] = 0;
    next_[v * n_ + v] = static_cast<Vertex>(v);
  }
  for (const Edge& e : g.edges()) {
    dist_[e.u * n_ + e.v] = e.w;
    dist_[e.v * n_ + e.u] = e.w;
    next_[e.u * n_ + e.v] = e.v;
    next_[e.v * n_ + e.u] = e.u;
  }
  for (std::size_t m = 0; m < n_; ++m) {
    for (std::size_t i = 0; i < n_; ++i) {
      const Weight im = dist_[i * n_ + m];
      if (im == kInfinity) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        const Weight cand = im + dist_[m * n_ + j];
        if (cand < dist_[i * n_ + j]) {
          dist_[i * n_ + j] = cand;
          next_[i * n_ + j] = next_[i * n_ + m];
        }
      }
    }
  }
  // Floating sums can make d(a,b) and d(b,a) differ in the last ulp; keep the matrix symmetric.
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Weight w = std::min(dist_[i * n_ + j], dist_[j * n_ + i]);
      dist_[i * n_ + j] = w;
      dist_[j * n_ + i] = w;
    }
  }
}

std::vector<Vertex> DistanceMatrix::path(Vertex a, Vertex b) const {
  if (a >= n_ || b >= n_) throw InvalidInput("vertex out of range");
  if (next_[a * n_ + b] == kNoVertex) return {};
  std::vector<Vertex> out{a};
  while (a != b) {
    a = next_[a * n_ + b];
    out.push_back(a);
  }
  return out;
}

std::vector<Edge> DistanceMatrix::path_edges(const Graph& g, Vertex a, Vertex b) const {
  std::vector<Vertex> verts = path(a, b);
  std::vector<Edge> out;
  for (std::size_t i = 1; i < verts.size(); ++i) {
    auto idx = g.find_edge(verts[i - 1], verts[i]);
    out.push_back(g.edges()[*idx]);
  }
  return out;
}

DistanceMatrix all_pairs_shortest_paths(const Graph& g) { return DistanceMatrix(g); }

}  // namespace qsteiner
