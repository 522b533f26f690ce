#include <algorithm>
#include <string>

#include "qsteiner/graph.hpp"

namespace qsteiner {

Vertex ContractedGraph::image_of(Vertex original) const {
  for (std::size_t i = 0; i < origin.size(); ++i) {
    if (origin[i].contains(original)) return static_cast<Vertex>(i);
  }
  throw InvalidInput("vertex " + std::to_string(original) + " is not in the base graph");
}

ContractedGraph identity_contraction(const Graph& g) {
  ContractedGraph cg;
  cg.graph = g;
  cg.contracted_vertex = 0;
  cg.origin.reserve(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) cg.origin.push_back(VertexSet{static_cast<Vertex>(v)});
  return cg;
}

ContractedGraph contract(const Graph& g, const VertexSet& a) {
  if (a.empty()) throw InvalidInput("cannot contract an empty vertex set");
  for (Vertex v : a) {
    if (!g.has_vertex(v)) throw InvalidInput("contraction set is not a subset of V");
  }

  const std::size_t n = g.vertex_count();
  const Vertex merged = static_cast<Vertex>(n - a.size());
  std::vector<Vertex> image(n);
  Vertex next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    image[v] = a.contains(static_cast<Vertex>(v)) ? merged : next++;
  }

  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    Vertex u = image[e.u];
    Vertex v = image[e.v];
    if (u == v) continue;  // both ends inside A
    edges.push_back(Edge{std::min(u, v), std::max(u, v), e.w});
  }

  ContractedGraph cg;
  cg.graph = Graph::build(n - a.size() + 1, edges);
  cg.contracted_vertex = merged;
  cg.origin.resize(n - a.size() + 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (image[v] != merged) cg.origin[image[v]] = VertexSet{static_cast<Vertex>(v)};
  }
  cg.origin[merged] = a;
  return cg;
}

ContractedGraph contract(const ContractedGraph& cg, const VertexSet& a) {
  ContractedGraph next = contract(cg.graph, a);
  std::vector<VertexSet> composed(next.origin.size());
  for (std::size_t i = 0; i < next.origin.size(); ++i) {
    VertexSet acc;
    for (Vertex mid : next.origin[i]) acc = acc.united(cg.origin[mid]);
    composed[i] = std::move(acc);
  }
  next.origin = std::move(composed);
  return next;
}

}  // namespace qsteiner
