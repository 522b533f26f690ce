#include <algorithm>
#include <cmath>
#include <string>

#include "qsteiner/dreyfus_wagner.hpp"

namespace qsteiner {

std::vector<VertexSet> bounded_subsets(std::size_t n, unsigned cap) {
  std::vector<VertexSet> out{VertexSet{}};
  std::vector<Vertex> current;
  // Depth-first generation per size keeps lexicographic order within a size.
  auto extend = [&](auto&& self, Vertex from, unsigned remaining) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (std::size_t v = from; v < n; ++v) {
      current.push_back(static_cast<Vertex>(v));
      self(self, static_cast<Vertex>(v + 1), remaining - 1);
      current.pop_back();
    }
  };
  for (unsigned size = 1; size <= cap && size <= n; ++size) extend(extend, 0, size);
  return out;
}

unsigned step1_size_cap(std::size_t k, double beta, double epsilon, unsigned levels) {
  if (levels == 0) throw InvalidInput("levels must be at least 1");
  const double fraction = (1.0 - beta) / std::ldexp(1.0, static_cast<int>(levels) - 1) + 15.0 * epsilon;
  const auto cap = static_cast<unsigned>(std::ceil(fraction * static_cast<double>(k) - 1e-9));
  return std::min<unsigned>(cap, static_cast<unsigned>(k));
}

unsigned split_set_bound(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  return static_cast<unsigned>(std::ceil(std::log2(1.0 / epsilon) - 1e-12));
}

Step1Tables::Step1Tables(const Graph& g, const VertexSet& k, const Config& config)
    : config_(config), terminals_(k.begin(), k.end()) {
  size_cap_ = step1_size_cap(k.size(), config.beta, config.epsilon, config.levels);
  split_sets_ = bounded_subsets(g.vertex_count(), config.a_cap);

  const DistanceMatrix dist(g);
  tables_.reserve(split_sets_.size());
  for (const VertexSet& a : split_sets_) {
    std::vector<Vertex> terms = terminals_;
    const VertexSet extra = a.minus(k);
    terms.insert(terms.end(), extra.begin(), extra.end());
    const auto width = static_cast<unsigned>(terms.size());
    const unsigned needed = std::min<unsigned>(width, size_cap_ + static_cast<unsigned>(a.size()));
    PerSet entry{a, DwTable::build(g, dist, terms, needed == 0 ? 0 : needed - 1), std::nullopt,
                 std::nullopt};

    if (!a.empty()) {
      ContractedGraph cg = contract(g, a);
      std::vector<Vertex> cterms;
      cterms.reserve(terminals_.size() + 1);
      for (Vertex t : terminals_) cterms.push_back(cg.image_of(t));
      cterms.push_back(cg.contracted_vertex);
      const auto cwidth = static_cast<unsigned>(cterms.size());
      const unsigned cneeded = std::min<unsigned>(cwidth, size_cap_ + 1);
      entry.in_contracted = DwTable::build(cg.graph, cterms, cneeded - 1);
      entry.contracted = std::move(cg);
    }
    tables_.push_back(std::move(entry));
  }
}

std::size_t Step1Tables::index_of(const VertexSet& a) const {
  auto it = std::lower_bound(split_sets_.begin(), split_sets_.end(), a,
                             [](const VertexSet& x, const VertexSet& y) {
                               if (x.size() != y.size()) return x.size() < y.size();
                               return x < y;
                             });
  if (it == split_sets_.end() || *it != a) {
    throw InvalidInput("split set is not admissible in the Step-1 tables");
  }
  return static_cast<std::size_t>(it - split_sets_.begin());
}

std::uint64_t Step1Tables::with_set_bits(TerminalMask x, const PerSet& entry) const {
  // Terminals inside A are forced in; A \ K occupies the bits after the k terminals.
  std::uint64_t bits = x.bits();
  for (std::size_t i = 0; i < terminals_.size(); ++i) {
    if (entry.a.contains(terminals_[i])) bits |= std::uint64_t{1} << i;
  }
  const auto extra = entry.in_graph.width() - terminals_.size();
  for (std::size_t j = 0; j < extra; ++j) bits |= std::uint64_t{1} << (terminals_.size() + j);
  return bits;
}

bool Step1Tables::has_key(TerminalMask x, const VertexSet& a) const {
  if (x.width() != terminals_.size() || x.count() > size_cap_ || a.size() > config_.a_cap) return false;
  return std::binary_search(split_sets_.begin(), split_sets_.end(), a,
                            [](const VertexSet& p, const VertexSet& q) {
                              if (p.size() != q.size()) return p.size() < q.size();
                              return p < q;
                            });
}

Weight Step1Tables::weight_with_set(TerminalMask x, const VertexSet& a) const {
  if (!has_key(x, a)) throw InvalidInput("key outside the Step-1 tables");
  const PerSet& entry = tables_[index_of(a)];
  return entry.in_graph.subset_weight(TerminalMask(with_set_bits(x, entry), entry.in_graph.width()));
}

Weight Step1Tables::weight_contracted(TerminalMask x, const VertexSet& a) const {
  if (a.empty()) throw InvalidInput("contracted weights need a nonempty split set");
  if (!has_key(x, a)) throw InvalidInput("key outside the Step-1 tables");
  const PerSet& entry = tables_[index_of(a)];
  const auto width = entry.in_contracted->width();
  const std::uint64_t bits = x.bits() | (std::uint64_t{1} << (width - 1));
  return entry.in_contracted->subset_weight(TerminalMask(bits, width));
}

SteinerTree Step1Tables::reconstruct_with_set(TerminalMask x, const VertexSet& a) const {
  if (!has_key(x, a)) throw InvalidInput("key outside the Step-1 tables");
  const PerSet& entry = tables_[index_of(a)];
  return entry.in_graph.reconstruct_subset(TerminalMask(with_set_bits(x, entry), entry.in_graph.width()));
}

SteinerTree Step1Tables::reconstruct_contracted(TerminalMask x, const VertexSet& a) const {
  if (a.empty()) throw InvalidInput("contracted weights need a nonempty split set");
  if (!has_key(x, a)) throw InvalidInput("key outside the Step-1 tables");
  const PerSet& entry = tables_[index_of(a)];
  const auto width = entry.in_contracted->width();
  const std::uint64_t bits = x.bits() | (std::uint64_t{1} << (width - 1));
  return entry.in_contracted->reconstruct_subset(TerminalMask(bits, width));
}

const ContractedGraph& Step1Tables::contracted(const VertexSet& a) const {
  if (a.empty()) throw InvalidInput("the empty set has no contraction");
  return *tables_[index_of(a)].contracted;
}

std::size_t Step1Tables::entry_count() const {
  std::size_t per_set = 0;
  const auto k = static_cast<unsigned>(terminals_.size());
  // Number of masks X ⊆ K with |X| <= size_cap.
  for (unsigned i = 0; i <= size_cap_; ++i) {
    std::size_t c = 1;
    for (unsigned j = 1; j <= i; ++j) c = c * (k - i + j) / j;
    per_set += c;
  }
  return per_set * split_sets_.size();
}

Step1Tables precompute_step1(const Graph& g, const VertexSet& k, double beta, double epsilon,
                             unsigned a_cap, unsigned levels) {
  if (!(beta > 0.0 && beta <= 0.5)) throw InvalidInput("beta must lie in (0, 1/2]");
  const unsigned bound = split_set_bound(epsilon);
  if (a_cap > bound) {
    throw InvalidInput("a_cap " + std::to_string(a_cap) + " exceeds ceil(log2(1/epsilon)) = " +
                       std::to_string(bound));
  }
  return Step1Tables(g, k, Step1Tables::Config{beta, epsilon, a_cap, levels});
}

}  // namespace qsteiner
