#include "qsteiner/dreyfus_wagner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace qsteiner {

namespace {

std::vector<std::uint64_t> masks_up_to(unsigned width, unsigned cap) {
  std::vector<std::uint64_t> out;
  const std::uint64_t total = std::uint64_t{1} << width;
  for (std::uint64_t m = 0; m < total; ++m) {
    if (static_cast<unsigned>(std::popcount(m)) <= cap) out.push_back(m);
  }
  std::stable_sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  return out;
}

}  // namespace

DwTable DwTable::build(const Graph& g, std::span<const Vertex> terminals, unsigned mask_cap) {
  return build(g, DistanceMatrix(g), terminals, mask_cap);
}

DwTable DwTable::build(const Graph& g, const DistanceMatrix& dist, std::span<const Vertex> terminals,
                       unsigned mask_cap) {
  if (terminals.size() > kMaxTerminals) {
    throw GuardExceeded("Dreyfus-Wagner table limited to " + std::to_string(kMaxTerminals) +
                        " terminals");
  }
  for (Vertex t : terminals) {
    if (!g.has_vertex(t)) throw InvalidInput("terminal " + std::to_string(t) + " out of range");
  }

  DwTable table;
  table.graph_ = g;
  table.dist_ = dist;
  table.terminals_.assign(terminals.begin(), terminals.end());
  const unsigned width = table.width();
  table.mask_cap_ = std::min(mask_cap, width);
  table.masks_ = masks_up_to(width, table.mask_cap_);
  table.slot_of_mask_.assign(std::size_t{1} << width, -1);
  for (std::size_t i = 0; i < table.masks_.size(); ++i) {
    table.slot_of_mask_[table.masks_[i]] = static_cast<std::int32_t>(i);
  }

  const std::size_t n = g.vertex_count();
  table.weights_.assign(table.masks_.size() * n, kInfinity);
  table.backs_.assign(table.masks_.size() * n, DwBackpointer{});

  std::vector<Weight> merged(n);
  std::vector<std::uint32_t> merged_split(n);
  for (std::size_t i = 0; i < table.masks_.size(); ++i) {
    const std::uint64_t x = table.masks_[i];
    Weight* row = &table.weights_[i * n];
    DwBackpointer* back = &table.backs_[i * n];
    const int size = std::popcount(x);

    if (size == 0) {
      std::fill(row, row + n, Weight{0});
      continue;
    }
    if (size == 1) {
      const Vertex t = table.terminals_[static_cast<unsigned>(std::countr_zero(x))];
      for (std::size_t p = 0; p < n; ++p) {
        row[p] = dist(static_cast<Vertex>(p), t);
        back[p] = DwBackpointer{DwBackpointer::Kind::kPath, t, 0};
      }
      continue;
    }

    // Merge step: the two subtrees meet at v.
    const std::uint64_t low = x & (~x + 1);
    const std::uint64_t rest = x ^ low;
    std::fill(merged.begin(), merged.end(), kInfinity);
    std::fill(merged_split.begin(), merged_split.end(), ~std::uint32_t{0});
    for (std::uint64_t sub_rest = rest;; sub_rest = (sub_rest - 1) & rest) {
      const std::uint64_t sub = sub_rest | low;
      if (sub != x) {
        const Weight* a = &table.weights_[table.slot(sub) * n];
        const Weight* b = &table.weights_[table.slot(x ^ sub) * n];
        for (std::size_t v = 0; v < n; ++v) {
          const Weight cand = a[v] + b[v];
          if (cand < merged[v] || (cand == merged[v] && sub < merged_split[v])) {
            merged[v] = cand;
            merged_split[v] = static_cast<std::uint32_t>(sub);
          }
        }
      }
      if (sub_rest == 0) break;
    }

    // Path step: connect p to the meeting vertex by a shortest path.
    for (std::size_t p = 0; p < n; ++p) {
      Weight best = kInfinity;
      Vertex best_v = 0;
      for (std::size_t v = 0; v < n; ++v) {
        const Weight cand = dist(static_cast<Vertex>(p), static_cast<Vertex>(v)) + merged[v];
        if (cand < best) {
          best = cand;
          best_v = static_cast<Vertex>(v);
        }
      }
      row[p] = best;
      back[p] = DwBackpointer{DwBackpointer::Kind::kMerge, best_v, merged_split[best_v]};
    }
  }
  return table;
}

std::size_t DwTable::slot(std::uint64_t bits) const {
  if (bits >= slot_of_mask_.size() || slot_of_mask_[bits] < 0) {
    throw InvalidInput("terminal mask " + std::to_string(bits) + " is not in the table");
  }
  return static_cast<std::size_t>(slot_of_mask_[bits]);
}

bool DwTable::contains(TerminalMask x, Vertex p) const {
  return x.width() == width() && p < graph_.vertex_count() && x.bits() < slot_of_mask_.size() &&
         slot_of_mask_[x.bits()] >= 0;
}

Weight DwTable::weight(TerminalMask x, Vertex p) const {
  if (!contains(x, p)) throw InvalidInput("key not present in Dreyfus-Wagner table");
  return weights_[slot(x.bits()) * graph_.vertex_count() + p];
}

const DwBackpointer& DwTable::backpointer(TerminalMask x, Vertex p) const {
  if (!contains(x, p)) throw InvalidInput("key not present in Dreyfus-Wagner table");
  return backs_[slot(x.bits()) * graph_.vertex_count() + p];
}

bool DwTable::has_subset(TerminalMask x) const {
  if (x.width() != width()) return false;
  if (x.count() <= 1) return true;
  const unsigned low = x.lowest();
  return contains(x - TerminalMask::single(low, width()), terminals_[low]);
}

Weight DwTable::subset_weight(TerminalMask x) const {
  if (x.width() != width()) throw InvalidInput("mask width does not match the table");
  if (x.count() <= 1) return 0;
  const unsigned low = x.lowest();
  return weight(x - TerminalMask::single(low, width()), terminals_[low]);
}

void DwTable::collect(std::uint64_t bits, Vertex p, std::vector<Edge>& out) const {
  const DwBackpointer& b = backs_[slot(bits) * graph_.vertex_count() + p];
  switch (b.kind) {
    case DwBackpointer::Kind::kEmpty:
      return;
    case DwBackpointer::Kind::kPath: {
      auto path = dist_.path_edges(graph_, p, b.via);
      out.insert(out.end(), path.begin(), path.end());
      return;
    }
    case DwBackpointer::Kind::kMerge: {
      auto path = dist_.path_edges(graph_, p, b.via);
      out.insert(out.end(), path.begin(), path.end());
      collect(b.split, b.via, out);
      collect(bits ^ b.split, b.via, out);
      return;
    }
  }
}

SteinerTree DwTable::reconstruct(TerminalMask x, Vertex p) const {
  if (!contains(x, p)) throw InvalidInput("key not present in Dreyfus-Wagner table");
  if (weight(x, p) == kInfinity) throw NoSteinerTree();
  std::vector<Edge> edges;
  collect(x.bits(), p, edges);
  return SteinerTree::from_edges(std::move(edges));
}

SteinerTree DwTable::reconstruct_subset(TerminalMask x) const {
  if (x.width() != width()) throw InvalidInput("mask width does not match the table");
  if (x.count() <= 1) return SteinerTree{};
  const unsigned low = x.lowest();
  return reconstruct(x - TerminalMask::single(low, width()), terminals_[low]);
}

SteinerTree dw_solve(const Graph& g, const VertexSet& k) {
  if (k.empty()) throw InvalidInput("dw_solve needs at least one terminal");
  for (Vertex t : k) {
    if (!g.has_vertex(t)) throw InvalidInput("terminal " + std::to_string(t) + " out of range");
  }
  if (k.size() == 1) return SteinerTree{};
  if (!connects(g, k)) throw NoSteinerTree();
  std::vector<Vertex> terms(k.begin(), k.end());
  const auto width = static_cast<unsigned>(terms.size());
  DwTable table = DwTable::build(g, terms, width - 1);
  return table.reconstruct_subset(TerminalMask::full(width));
}

unsigned bounded_size_cap(double alpha, std::size_t k) {
  const double raw = alpha * static_cast<double>(k);
  const auto cap = static_cast<unsigned>(std::ceil(raw - 1e-9));
  return std::min<unsigned>(cap, static_cast<unsigned>(k));
}

DwTable dw_bounded(const Graph& g, const VertexSet& k, double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw InvalidInput("alpha must lie in (0, 1/2]");
  std::vector<Vertex> terms(k.begin(), k.end());
  return DwTable::build(g, terms, bounded_size_cap(alpha, k.size()));
}

}  // namespace qsteiner
