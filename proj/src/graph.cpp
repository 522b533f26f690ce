#include "qsteiner/graph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <string>
#include <utility>

namespace qsteiner {

// ---- VertexSet ----

VertexSet::VertexSet(std::initializer_list<Vertex> ids) : VertexSet(std::vector<Vertex>(ids)) {}

VertexSet::VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool VertexSet::contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }

VertexSet VertexSet::united(const VertexSet& other) const {
  std::vector<Vertex> out;
  std::set_union(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                 std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet VertexSet::minus(const VertexSet& other) const {
  std::vector<Vertex> out;
  std::set_difference(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                      std::back_inserter(out));
  return VertexSet(std::move(out));
}

VertexSet VertexSet::intersected(const VertexSet& other) const {
  std::vector<Vertex> out;
  std::set_intersection(ids_.begin(), ids_.end(), other.ids_.begin(), other.ids_.end(),
                        std::back_inserter(out));
  return VertexSet(std::move(out));
}

// ---- TerminalMask ----

namespace {

std::uint64_t width_bits(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

}  // namespace

TerminalMask::TerminalMask(std::uint64_t bits, unsigned width) : bits_(bits), width_(width) {
  if (width > kMaxWidth) throw InvalidInput("terminal mask wider than 64 bits");
  if ((bits & ~width_bits(width)) != 0) throw InvalidInput("terminal mask bits exceed its width");
}

TerminalMask TerminalMask::full(unsigned width) { return TerminalMask(width_bits(width), width); }

TerminalMask TerminalMask::single(unsigned index, unsigned width) {
  if (index >= width) throw InvalidInput("terminal index out of range");
  return TerminalMask(std::uint64_t{1} << index, width);
}

unsigned TerminalMask::count() const noexcept {
  return static_cast<unsigned>(std::popcount(bits_));
}

bool TerminalMask::test(unsigned index) const {
  if (index >= width_) throw InvalidInput("terminal index out of range");
  return (bits_ >> index) & 1U;
}

unsigned TerminalMask::lowest() const {
  if (bits_ == 0) throw InvalidInput("lowest() of an empty mask");
  return static_cast<unsigned>(std::countr_zero(bits_));
}

bool TerminalMask::is_subset_of(const TerminalMask& other) const {
  check_width(other);
  return (bits_ & ~other.bits_) == 0;
}

void TerminalMask::check_width(const TerminalMask& o) const {
  if (o.width_ != width_) throw InvalidInput("terminal masks of different widths");
}

TerminalMask TerminalMask::operator|(const TerminalMask& o) const {
  check_width(o);
  return TerminalMask(bits_ | o.bits_, width_);
}

TerminalMask TerminalMask::operator&(const TerminalMask& o) const {
  check_width(o);
  return TerminalMask(bits_ & o.bits_, width_);
}

TerminalMask TerminalMask::operator-(const TerminalMask& o) const {
  check_width(o);
  return TerminalMask(bits_ & ~o.bits_, width_);
}

TerminalMask TerminalMask::complement() const {
  return TerminalMask(~bits_ & width_bits(width_), width_);
}

VertexSet to_vertex_set(const TerminalMask& mask, std::span<const Vertex> ordering) {
  if (mask.width() != ordering.size()) throw InvalidInput("mask width does not match ordering");
  std::vector<Vertex> out;
  for (unsigned i = 0; i < mask.width(); ++i) {
    if (mask.test(i)) out.push_back(ordering[i]);
  }
  return VertexSet(std::move(out));
}

TerminalMask to_mask(const VertexSet& subset, std::span<const Vertex> ordering) {
  if (ordering.size() > TerminalMask::kMaxWidth) throw InvalidInput("more than 64 terminals");
  std::uint64_t bits = 0;
  for (Vertex v : subset) {
    auto it = std::find(ordering.begin(), ordering.end(), v);
    if (it == ordering.end()) throw InvalidInput("vertex " + std::to_string(v) + " is not a terminal");
    bits |= std::uint64_t{1} << (it - ordering.begin());
  }
  return TerminalMask(bits, static_cast<unsigned>(ordering.size()));
}

// ---- Graph ----

Graph Graph::build(std::size_t n, std::span<const Edge> edges) {
  std::map<std::pair<Vertex, Vertex>, Weight> best;
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw InvalidInput("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") has an endpoint outside [0," + std::to_string(n) + ")");
    }
    if (e.u == e.v) throw InvalidInput("self-loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0) || e.w == kInfinity) {
      throw InvalidInput("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") has non-positive or non-finite weight");
    }
    auto key = std::minmax(e.u, e.v);
    auto [it, inserted] = best.emplace(key, e.w);
    if (!inserted) it->second = std::min(it->second, e.w);
  }

  Graph g;
  g.n_ = n;
  g.edges_.reserve(best.size());
  for (const auto& [key, w] : best) g.edges_.push_back(Edge{key.first, key.second, w});

  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : g.edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::size_t i = 0; i < g.edges_.size(); ++i) {
    const Edge& e = g.edges_[i];
    g.adjacency_[fill[e.u]++] = Neighbor{e.v, e.w, i};
    g.adjacency_[fill[e.v]++] = Neighbor{e.u, e.w, i};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });
  }
  return g;
}

std::span<const Graph::Neighbor> Graph::neighbors(Vertex v) const {
  if (v >= n_) throw InvalidInput("vertex out of range");
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::optional<std::size_t> Graph::find_edge(Vertex a, Vertex b) const {
  if (a >= n_ || b >= n_) return std::nullopt;
  for (const Neighbor& nb : neighbors(a)) {
    if (nb.to == b) return nb.edge;
  }
  return std::nullopt;
}

Weight Graph::total_weight() const {
  Weight total = 0;
  for (const Edge& e : edges_) total += e.w;
  return total;
}

Graph Graph::with_edge(Edge e) const {
  std::vector<Edge> all(edges_.begin(), edges_.end());
  all.push_back(e);
  return build(n_, all);
}

bool connects(const Graph& g, const VertexSet& vertices) {
  if (vertices.size() <= 1) {
    return vertices.empty() || g.has_vertex(vertices[0]);
  }
  for (Vertex v : vertices) {
    if (!g.has_vertex(v)) return false;
  }
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<Vertex> stack{vertices[0]};
  seen[vertices[0]] = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (const auto& nb : g.neighbors(v)) {
      if (!seen[nb.to]) {
        seen[nb.to] = 1;
        stack.push_back(nb.to);
      }
    }
  }
  return std::all_of(vertices.begin(), vertices.end(), [&](Vertex v) { return seen[v] != 0; });
}

// ---- SteinerTree ----

SteinerTree SteinerTree::from_edges(std::vector<Edge> edges) {
  for (Edge& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());
  SteinerTree t;
  t.edges = std::move(edges);
  for (const Edge& e : t.edges) t.weight += e.w;
  return t;
}

VertexSet SteinerTree::vertices() const {
  std::vector<Vertex> out;
  out.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    out.push_back(e.u);
    out.push_back(e.v);
  }
  return VertexSet(std::move(out));
}

TreeCheck check_steiner_tree(const Graph& g, const VertexSet& k, const SteinerTree& tree) {
  TreeCheck check;
  VertexSet verts = tree.vertices();

  check.edges_in_graph = std::all_of(tree.edges.begin(), tree.edges.end(), [&](const Edge& e) {
    auto idx = g.find_edge(e.u, e.v);
    return idx && weights_equal(g.edges()[*idx].w, e.w);
  });

  Weight sum = 0;
  for (const Edge& e : tree.edges) sum += e.w;
  check.weight_consistent = weights_equal(sum, tree.weight);

  // Union-find over the tree's own vertices detects cycles and counts components.
  std::vector<std::size_t> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto index = [&](Vertex v) {
    return static_cast<std::size_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  check.acyclic = true;
  std::size_t components = verts.size();
  for (const Edge& e : tree.edges) {
    std::size_t a = find(index(e.u));
    std::size_t b = find(index(e.v));
    if (a == b) {
      check.acyclic = false;
    } else {
      parent[a] = b;
      --components;
    }
  }
  check.connected = components <= 1;

  if (tree.edges.empty()) {
    check.spans_terminals = k.size() <= 1;
  } else {
    check.spans_terminals = std::all_of(k.begin(), k.end(), [&](Vertex t) { return verts.contains(t); });
  }

  std::vector<std::size_t> degree(verts.size(), 0);
  for (const Edge& e : tree.edges) {
    ++degree[index(e.u)];
    ++degree[index(e.v)];
  }
  check.leaves_are_terminals = true;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (degree[i] == 1 && !k.contains(verts[i])) check.leaves_are_terminals = false;
  }
  return check;
}

}  // namespace qsteiner
