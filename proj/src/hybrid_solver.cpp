#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include <absl/container/flat_hash_map.h>

#include "qsteiner/split_solver.hpp"

namespace qsteiner {

std::vector<double> SplitParams::effective_alphas() const {
  if (!alphas.empty()) return alphas;
  std::vector<double> out(levels, 0.5);
  if (levels > 0) out.back() = beta;
  return out;
}

void SplitParams::validate() const {
  if (levels == 0) throw InvalidInput("levels must be at least 1");
  if (!(beta > 0.0 && beta <= 0.5)) throw InvalidInput("beta must lie in (0, 1/2]");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
  if (!(dh_constant > 0.0)) throw InvalidInput("dh_constant must be positive");
  if (!alphas.empty() && alphas.size() != levels) {
    throw InvalidInput("alpha list needs one value per level");
  }
  for (double a : alphas) {
    if (!(a > 0.0 && a <= 0.5)) throw InvalidInput("alpha values must lie in (0, 1/2]");
  }
}

SizeWindow level_window(const SplitParams& params, unsigned level, std::size_t k, unsigned slack) {
  const auto alphas = params.effective_alphas();
  if (level == 0 || level > alphas.size()) throw InvalidInput("level out of range");
  const double target = alphas[level - 1] / std::ldexp(1.0, static_cast<int>(level) - 1);
  const double spread = (level == 1 ? 1.0 : 15.0) * params.epsilon;
  const double kd = static_cast<double>(k);

  const double lo_raw = std::ceil((target - spread) * kd - 1e-9);
  const double hi_raw = std::floor((target + spread) * kd + 1e-9);
  unsigned lo = lo_raw <= 0.0 ? 0u : static_cast<unsigned>(lo_raw);
  unsigned hi = hi_raw <= 0.0 ? 0u : static_cast<unsigned>(std::min(hi_raw, kd));
  if (lo_raw > hi_raw) {
    lo = hi = static_cast<unsigned>(std::floor(target * kd + 1e-9));
  }
  lo = lo >= slack ? lo - slack : 0;
  hi = std::min<unsigned>(hi + slack, static_cast<unsigned>(k));
  return SizeWindow{lo, hi};
}

namespace {

constexpr std::uint32_t kLeafHitBucket = 0;
constexpr std::uint32_t kLeafFallbackBucket = 1;

std::uint64_t bit(Vertex v) { return std::uint64_t{1} << v; }

std::uint64_t binomial(unsigned n, unsigned r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t c = 1;
  for (unsigned i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

struct Context {
  ContractedGraph cg;
  std::vector<Vertex> rep;    // original vertex -> smallest original vertex of its group
  std::vector<Vertex> id_of;  // original vertex -> id in cg.graph
  std::vector<std::uint64_t> term_bit;    // terminal index -> bit of its representative
  std::vector<std::uint64_t> split_bits;  // each admissible A as representative bits
  std::vector<VertexSet> split_ids;       // the same sets as ids of cg.graph
  std::vector<std::int64_t> child;        // context of this/A, -1 until built
  std::size_t groups = 0;                 // groups holding two or more vertices
  VertexSet group;                        // the group, when there is exactly one
  std::optional<DistanceMatrix> dist;
  // Leaf cache indexed by representative bits; state 0 unknown, 1 table hit, 2 fallback.
  std::vector<std::uint8_t> dense_state;
  std::vector<Weight> dense_weight;
};

struct SubKey {
  std::uint64_t core = 0;
  std::uint64_t extras = 0;
  std::uint32_t ctx = 0;
  std::uint32_t level = 0;

  friend bool operator==(const SubKey&, const SubKey&) = default;
};

std::uint64_t mix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  return h ^ (h >> 33);
}

struct SubKeyHash {
  std::size_t operator()(const SubKey& k) const noexcept {
    return mix(k.core ^ mix(k.extras ^ mix((std::uint64_t{k.ctx} << 8) | k.level)));
  }
};

struct LeafKey {
  std::uint64_t set = 0;
  std::uint32_t ctx = 0;

  friend bool operator==(const LeafKey&, const LeafKey&) = default;
};

struct LeafKeyHash {
  std::size_t operator()(const LeafKey& k) const noexcept { return mix(k.set ^ mix(k.ctx)); }
};

struct Choice {
  std::uint64_t k1 = 0;
  std::uint64_t left_extras = 0;
  std::uint32_t split = 0;
};

using SubLedger = std::vector<std::pair<std::uint32_t, std::uint64_t>>;

struct Solved {
  Weight value = kInfinity;
  Choice choice;
  SubLedger ledger;  // (bucket, count), sorted by bucket
};

// Counts per bucket for one subproblem under evaluation.
class Accumulator {
 public:
  void add(std::uint32_t bucket, std::uint64_t count) {
    if (bucket >= counts_.size()) counts_.resize(bucket + 1, 0);
    if (counts_[bucket] == 0) touched_.push_back(bucket);
    counts_[bucket] += count;
  }
  void add(const SubLedger& sub) {
    for (const auto& [bucket, count] : sub) add(bucket, count);
  }
  SubLedger take() {
    std::sort(touched_.begin(), touched_.end());
    SubLedger out;
    out.reserve(touched_.size());
    for (std::uint32_t b : touched_) {
      out.emplace_back(b, counts_[b]);
      counts_[b] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint32_t> touched_;
};

class Engine {
 public:
  Engine(const Graph& g, const VertexSet& k, const SplitParams& params, unsigned slack,
         const Step1Tables& step1)
      : g_(g), terminals_(k.begin(), k.end()), params_(params), step1_(step1),
        acc_(params.levels + 2), scratch_(params.levels + 2) {
    term_index_.assign(g.vertex_count(), -1);
    for (std::size_t i = 0; i < terminals_.size(); ++i) {
      term_index_[terminals_[i]] = static_cast<int>(i);
    }
    for (unsigned level = 1; level <= params.levels; ++level) {
      windows_.push_back(level_window(params, level, terminals_.size(), slack));
    }
    buckets_.push_back({0, SearchShape{}});  // leaf table hits
    buckets_.push_back({0, SearchShape{}});  // leaf fallbacks
    intern(identity_contraction(g));
    top_ = SubKey{full_core(), 0, 0, 1};
  }

  Weight run() {
    top_solved_ = evaluate(top_);
    return top_solved_.value;
  }

  QueryLedger ledger() const {
    QueryLedger out(params_.dh_constant);
    for (const auto& [bucket, count] : top_solved_.ledger) {
      if (bucket == kLeafHitBucket) {
        out.leaf_table_hits += count;
      } else if (bucket == kLeafFallbackBucket) {
        out.leaf_fallbacks += count;
      } else {
        out.record(buckets_[bucket].first, buckets_[bucket].second, count);
      }
    }
    return out;
  }

  std::vector<Edge> tree_edges() {
    std::vector<Edge> out;
    collect(top_, &top_solved_, out);
    return out;
  }

 private:
  std::uint64_t full_core() const {
    return terminals_.size() == 64 ? ~std::uint64_t{0}
                                   : (std::uint64_t{1} << terminals_.size()) - 1;
  }

  std::uint64_t core_reps(const Context& c, std::uint64_t core) const {
    std::uint64_t out = 0;
    for (; core != 0; core &= core - 1) out |= c.term_bit[std::countr_zero(core)];
    return out;
  }

  std::uint32_t intern(ContractedGraph cg) {
    const std::size_t n = g_.vertex_count();
    std::vector<Vertex> rep(n);
    std::vector<Vertex> id_of(n);
    for (std::size_t i = 0; i < cg.origin.size(); ++i) {
      const Vertex smallest = cg.origin[i][0];
      for (Vertex v : cg.origin[i]) {
        rep[v] = smallest;
        id_of[v] = static_cast<Vertex>(i);
      }
    }
    auto [it, fresh] = context_ids_.try_emplace(rep, static_cast<std::uint32_t>(contexts_.size()));
    if (!fresh) return it->second;

    Context c;
    c.rep = std::move(rep);
    c.id_of = std::move(id_of);
    for (Vertex t : terminals_) c.term_bit.push_back(bit(c.rep[t]));
    c.split_ids = bounded_subsets(cg.graph.vertex_count(), params_.a_cap);
    for (const VertexSet& a : c.split_ids) {
      std::uint64_t bits = 0;
      for (Vertex id : a) bits |= bit(cg.origin[id][0]);
      c.split_bits.push_back(bits);
    }
    c.child.assign(c.split_ids.size(), -1);
    for (const VertexSet& members : cg.origin) {
      if (members.size() < 2) continue;
      ++c.groups;
      c.group = members;
    }
    c.cg = std::move(cg);
    contexts_.push_back(std::move(c));
    return it->second;
  }

  std::uint32_t child_context(std::uint32_t ctx, std::uint32_t split) {
    if (contexts_[ctx].child[split] < 0) {
      ContractedGraph next = contract(contexts_[ctx].cg, contexts_[ctx].split_ids[split]);
      const std::uint32_t id = intern(std::move(next));
      contexts_[ctx].child[split] = id;
    }
    return static_cast<std::uint32_t>(contexts_[ctx].child[split]);
  }

  std::uint32_t bucket(unsigned level, SearchShape shape) {
    auto key = std::make_tuple(level, shape.driver, shape.poly);
    auto [it, fresh] = bucket_ids_.try_emplace(key, static_cast<std::uint32_t>(buckets_.size()));
    if (fresh) buckets_.emplace_back(level, shape);
    return it->second;
  }

  const DistanceMatrix& distances(Context& c) {
    if (!c.dist) c.dist.emplace(c.cg.graph);
    return *c.dist;
  }

  std::vector<Vertex> ids_of(const Context& c, std::uint64_t set) const {
    std::vector<Vertex> ids;
    for (; set != 0; set &= set - 1) ids.push_back(c.id_of[std::countr_zero(set)]);
    return ids;
  }

  // W of the vertex set `set` (representative bits) in context `ctx`. Step-1 tables answer it
  // when the context is G or a single contraction G/A and the key is in range.
  std::optional<Weight> table_lookup(const Context& c, std::uint64_t set) const {
    const auto width = static_cast<unsigned>(terminals_.size());
    if (c.groups == 0) {
      std::uint64_t x = 0;
      std::vector<Vertex> extra;
      for (std::uint64_t s = set; s != 0; s &= s - 1) {
        const auto v = static_cast<Vertex>(std::countr_zero(s));
        if (term_index_[v] >= 0) {
          x |= std::uint64_t{1} << term_index_[v];
        } else {
          extra.push_back(v);
        }
      }
      const TerminalMask mask(x, width);
      const VertexSet a(std::move(extra));
      if (!step1_.has_key(mask, a)) return std::nullopt;
      return step1_.weight_with_set(mask, a);
    }
    if (c.groups == 1) {
      const std::uint64_t merged = bit(c.group[0]);
      if ((set & merged) == 0) return std::nullopt;
      std::uint64_t x = 0;
      for (std::uint64_t s = set & ~merged; s != 0; s &= s - 1) {
        const auto v = static_cast<Vertex>(std::countr_zero(s));
        if (term_index_[v] < 0) return std::nullopt;
        x |= std::uint64_t{1} << term_index_[v];
      }
      const TerminalMask mask(x, width);
      if (!step1_.has_key(mask, c.group)) return std::nullopt;
      return step1_.weight_contracted(mask, c.group);
    }
    return std::nullopt;
  }

  std::pair<Weight, bool> compute_leaf(std::uint32_t ctx, std::uint64_t set) {
    Context& c = contexts_[ctx];
    if (auto w = table_lookup(c, set)) return {*w, true};
    const auto terms = ids_of(c, set);
    const auto width = static_cast<unsigned>(terms.size());
    const DwTable table = DwTable::build(c.cg.graph, distances(c), terms, width - 1);
    return {table.subset_weight(TerminalMask::full(width)), false};
  }

  Weight leaf(std::uint32_t ctx, std::uint64_t set, Accumulator& acc) {
    if (std::popcount(set) <= 1) {
      acc.add(kLeafHitBucket, 1);
      return 0;
    }
    Context& c = contexts_[ctx];
    if (c.dense_state.empty() && dense_bytes_ + dense_cost() <= kDenseBudget) {
      c.dense_state.assign(std::size_t{1} << g_.vertex_count(), 0);
      c.dense_weight.assign(std::size_t{1} << g_.vertex_count(), 0);
      dense_bytes_ += dense_cost();
    }
    if (!c.dense_state.empty()) {
      std::uint8_t& state = c.dense_state[set];
      if (state == 0) {
        const auto [w, hit] = compute_leaf(ctx, set);
        contexts_[ctx].dense_weight[set] = w;
        state = hit ? 1 : 2;
      }
      acc.add(state == 1 ? kLeafHitBucket : kLeafFallbackBucket, 1);
      return c.dense_weight[set];
    }
    auto it = leaves_.find(LeafKey{set, ctx});
    if (it == leaves_.end()) it = leaves_.emplace(LeafKey{set, ctx}, compute_leaf(ctx, set)).first;
    acc.add(it->second.second ? kLeafHitBucket : kLeafFallbackBucket, 1);
    return it->second.first;
  }

  std::size_t dense_cost() const {
    if (g_.vertex_count() > kDenseMaxVertices) return kDenseBudget + 1;
    return (std::size_t{1} << g_.vertex_count()) * (sizeof(Weight) + 1);
  }

  std::vector<std::uint64_t> core_subsets(std::uint64_t core, SizeWindow window) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t sub = core;; sub = (sub - 1) & core) {
      if (window.contains(static_cast<unsigned>(std::popcount(sub)))) out.push_back(sub);
      if (sub == 0) break;
    }
    std::sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
      const int pa = std::popcount(a);
      const int pb = std::popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    return out;
  }

  const Solved& solve(const SubKey& key) {
    if (params_.memoize) {
      auto it = memo_.find(key);
      if (it != memo_.end()) return solved_[it->second];
      Solved fresh = evaluate(key);
      memo_.emplace(key, static_cast<std::uint32_t>(solved_.size()));
      solved_.push_back(std::move(fresh));
      return solved_.back();
    }
    scratch_[key.level] = evaluate(key);
    return scratch_[key.level];
  }

  std::uint32_t child_of(std::uint32_t ctx, std::uint32_t split) {
    const std::int64_t known = contexts_[ctx].child[split];
    return known >= 0 ? static_cast<std::uint32_t>(known) : child_context(ctx, split);
  }

  // Both sides of one search element (K', R_L, A).
  struct Sides {
    SubKey left;
    SubKey right;  // meaningful only when A is nonempty
  };

  Sides sides(const SubKey& key, const Choice& ch) {
    Sides s;
    const Context& c = contexts_[key.ctx];
    const std::uint64_t a_bits = c.split_bits[ch.split];
    s.left = SubKey{ch.k1, (ch.left_extras | a_bits) & ~core_reps(c, ch.k1), key.ctx, key.level + 1};
    if (ch.split == 0) return s;
    const std::uint32_t child = child_of(key.ctx, ch.split);
    const Context& next = contexts_[child];
    std::uint64_t extras = bit(next.rep[std::countr_zero(a_bits)]);
    for (std::uint64_t r = key.extras & ~ch.left_extras; r != 0; r &= r - 1) {
      extras |= bit(next.rep[std::countr_zero(r)]);
    }
    const std::uint64_t core = key.core & ~ch.k1;
    s.right = SubKey{core, extras & ~core_reps(next, core), child, key.level + 1};
    return s;
  }

  Weight side_value(const SubKey& side, bool deepest, Accumulator& acc) {
    if (deepest) return leaf(side.ctx, core_reps(contexts_[side.ctx], side.core) | side.extras, acc);
    const Solved& sub = solve(side);
    acc.add(sub.ledger);
    return sub.value;
  }

  // Elements are visited in the order (K' by size then bits, A by index, R_L ascending); the
  // first strict minimum wins, which makes the argmin deterministic.
  Solved evaluate(const SubKey& key) {
    Solved out;
    const std::uint64_t set = core_reps(contexts_[key.ctx], key.core) | key.extras;
    if (std::popcount(set) <= 1) {
      out.value = 0;
      return out;
    }

    const auto core_size = static_cast<unsigned>(std::popcount(key.core));
    SizeWindow window = windows_[key.level - 1];
    window.hi = std::min(window.hi, core_size);
    std::uint64_t driver = 0;
    for (unsigned s = window.lo; s <= window.hi; ++s) driver += binomial(core_size, s);
    if (driver == 0) return out;  // empty search space: nothing to minimise over

    const std::size_t split_count = contexts_[key.ctx].split_bits.size();
    const SearchShape shape{driver, (std::uint64_t{1} << std::popcount(key.extras)) * split_count};
    Accumulator& acc = acc_[key.level];
    acc.add(bucket(key.level, shape), 1);

    const bool deepest = key.level == params_.levels;
    std::vector<std::uint64_t> extra_bits;
    for (std::uint64_t r = key.extras; r != 0; r &= r - 1) extra_bits.push_back(r & (~r + 1));
    std::vector<std::uint64_t> mapped(extra_bits.size());

    for (std::uint64_t k1 : core_subsets(key.core, window)) {
      const std::uint64_t k1_reps = core_reps(contexts_[key.ctx], k1);
      const std::uint64_t rest = key.core & ~k1;
      for (std::uint32_t a = 0; a < split_count; ++a) {
        const std::uint64_t a_bits = contexts_[key.ctx].split_bits[a];
        std::uint32_t child = 0;
        std::uint64_t right_base = 0;
        std::uint64_t right_mask = 0;
        if (a != 0) {
          child = child_of(key.ctx, a);
          const Context& next = contexts_[child];
          right_base = bit(next.rep[std::countr_zero(a_bits)]);
          right_mask = ~core_reps(next, rest);
          for (std::size_t i = 0; i < extra_bits.size(); ++i) {
            mapped[i] = bit(next.rep[std::countr_zero(extra_bits[i])]);
          }
        }
        for (std::uint64_t r = 0;; r = (r - key.extras) & key.extras) {
          const SubKey left{k1, (r | a_bits) & ~k1_reps, key.ctx, key.level + 1};
          Weight value = side_value(left, deepest, acc);
          if (a == 0) {
            // Without split nodes the right part must be empty.
            if (rest != 0 || (key.extras & ~r) != 0) value = kInfinity;
          } else {
            std::uint64_t extras = right_base;
            for (std::size_t i = 0; i < extra_bits.size(); ++i) {
              if ((r & extra_bits[i]) == 0) extras |= mapped[i];
            }
            value += side_value(SubKey{rest, extras & right_mask, child, key.level + 1}, deepest, acc);
          }
          if (value < out.value) {
            out.value = value;
            out.choice = Choice{k1, r, a};
          }
          if (r == key.extras) break;
        }
      }
    }
    out.ledger = acc.take();
    return out;
  }
  Edge lift(const Context& c, const Edge& e) const {
    std::optional<Edge> best;
    for (Vertex u : c.cg.origin[e.u]) {
      for (Vertex v : c.cg.origin[e.v]) {
        const auto idx = g_.find_edge(u, v);
        if (!idx || g_.edges()[*idx].w != e.w) continue;
        const Edge cand{std::min(u, v), std::max(u, v), e.w};
        if (!best || cand < *best) best = cand;
      }
    }
    if (!best) throw std::logic_error("contracted edge without an original counterpart");
    return *best;
  }

  void leaf_tree(std::uint32_t ctx, std::uint64_t set, std::vector<Edge>& out) {
    if (std::popcount(set) <= 1) return;
    Context& c = contexts_[ctx];
    const auto terms = ids_of(c, set);
    const auto width = static_cast<unsigned>(terms.size());
    const DwTable table = DwTable::build(c.cg.graph, distances(c), terms, width - 1);
    for (const Edge& e : table.reconstruct_subset(TerminalMask::full(width)).edges) {
      out.push_back(lift(contexts_[ctx], e));
    }
  }

  void collect(const SubKey& key, const Solved* known, std::vector<Edge>& out) {
    const std::uint64_t set = core_reps(contexts_[key.ctx], key.core) | key.extras;
    if (std::popcount(set) <= 1) return;
    Solved local;
    if (known == nullptr) {
      if (params_.memoize) {
        known = &solve(key);
      } else {
        local = evaluate(key);
        known = &local;
      }
    }
    if (known->value == kInfinity) throw std::logic_error("reconstructing an infeasible subproblem");
    const Choice ch = known->choice;
    const bool deepest = key.level == params_.levels;

    const Sides s = sides(key, ch);
    if (deepest) {
      leaf_tree(key.ctx, core_reps(contexts_[key.ctx], s.left.core) | s.left.extras, out);
    } else {
      collect(s.left, nullptr, out);
    }
    if (ch.split != 0) {
      const SubKey& rk = s.right;
      if (deepest) {
        leaf_tree(rk.ctx, core_reps(contexts_[rk.ctx], rk.core) | rk.extras, out);
      } else {
        collect(rk, nullptr, out);
      }
    }
  }

  const Graph& g_;
  std::vector<Vertex> terminals_;
  std::vector<int> term_index_;
  SplitParams params_;
  const Step1Tables& step1_;
  std::vector<SizeWindow> windows_;

  std::deque<Context> contexts_;
  std::map<std::vector<Vertex>, std::uint32_t> context_ids_;
  std::vector<std::pair<unsigned, SearchShape>> buckets_;
  std::map<std::tuple<unsigned, std::uint64_t, std::uint64_t>, std::uint32_t> bucket_ids_;

  static constexpr std::size_t kDenseMaxVertices = 24;
  static constexpr std::size_t kDenseBudget = std::size_t{96} << 20;
  std::size_t dense_bytes_ = 0;

  absl::flat_hash_map<SubKey, std::uint32_t, SubKeyHash> memo_;
  std::deque<Solved> solved_;
  absl::flat_hash_map<LeafKey, std::pair<Weight, bool>, LeafKeyHash> leaves_;
  std::vector<Accumulator> acc_;
  std::vector<Solved> scratch_;

  SubKey top_;
  Solved top_solved_;
};

// Drops non-terminal leaves until every leaf is a terminal.
std::vector<Edge> prune(std::vector<Edge> edges, const VertexSet& k) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<Vertex, unsigned> degree;
    for (const Edge& e : edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    auto dead = [&](const Edge& e) {
      return (degree[e.u] == 1 && !k.contains(e.u)) || (degree[e.v] == 1 && !k.contains(e.v));
    };
    const auto before = edges.size();
    edges.erase(std::remove_if(edges.begin(), edges.end(), dead), edges.end());
    changed = edges.size() != before;
  }
  return edges;
}

SteinerTree assemble(const Graph& g, const VertexSet& k, std::vector<Edge> edges) {
  SteinerTree tree = SteinerTree::from_edges(std::move(edges));
  if (check_steiner_tree(g, k, tree).ok()) return tree;
  // A non-optimal search can glue overlapping subtrees; keep a spanning tree of what it found.
  auto spanning = minimum_spanning_tree(g, tree.vertices());
  if (!spanning) throw std::logic_error("hybrid search produced a disconnected edge set");
  return SteinerTree::from_edges(prune(spanning->edges, k));
}

}  // namespace

HybridResult hybrid_solve(const Graph& g, const VertexSet& k, const SplitParams& params) {
  params.validate();
  if (k.empty()) throw InvalidInput("hybrid_solve needs at least one terminal");
  for (Vertex t : k) {
    if (!g.has_vertex(t)) throw InvalidInput("terminal " + std::to_string(t) + " out of range");
  }
  if (g.vertex_count() > 64) throw GuardExceeded("hybrid_solve is limited to 64 vertices");
  const unsigned bound = split_set_bound(params.epsilon);
  if (params.a_cap > bound) {
    throw InvalidInput("a_cap " + std::to_string(params.a_cap) +
                       " exceeds ceil(log2(1/epsilon)) = " + std::to_string(bound));
  }

  HybridResult result;
  result.params = params;
  result.ledger = QueryLedger(params.dh_constant);
  result.value = 0;
  if (k.size() == 1) return result;
  if (!connects(g, k)) throw NoSteinerTree();

  SplitParams run = params;
  unsigned slack = 0;
  for (;;) {
    const Step1Tables step1 =
        precompute_step1(g, k, run.beta, run.epsilon, run.a_cap, run.levels);
    Engine engine(g, k, run, slack, step1);
    const Weight value = engine.run();
    if (value != kInfinity) {
      result.value = value;
      result.ledger = engine.ledger();
      result.tree = assemble(g, k, engine.tree_edges());
      result.params = run;
      result.slack = slack;
      result.step1_size_cap = step1.size_cap();
      result.step1_entries = step1.entry_count();
      return result;
    }
    if (result.widenings.size() >= params.max_widenings) {
      throw InvalidInput("no finite decomposition after " + std::to_string(params.max_widenings) +
                         " widenings");
    }
    ++slack;
    if (run.a_cap < bound) ++run.a_cap;
    result.widenings.push_back(
        Widening{slack, run.a_cap, "no finite split within the size windows"});
  }
}

}  // namespace qsteiner
