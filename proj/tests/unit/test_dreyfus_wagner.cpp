#include <algorithm>

#include "doctest.h"
#include "oracles.hpp"
#include "qsteiner/dreyfus_wagner.hpp"
#include "qsteiner/stp_io.hpp"

using namespace qsteiner;

TEST_CASE("dw_solve matches the oracle and returns a valid tree") {
  for (unsigned i = 0; i < 60; ++i) {
    const Instance inst = generate(oracle::corpus_config(i)).instance;
    const SteinerTree t = dw_solve(inst.graph, inst.terminals);
    CHECK(t.weight == oracle::steiner_weight(inst.graph, inst.terminals));
    const TreeCheck c = check_steiner_tree(inst.graph, inst.terminals, t);
    CHECK(c.ok());
  }
}

TEST_CASE("dw_solve edge cases") {
  const std::vector<Edge> edges{{0, 1, 2}, {1, 2, 2}};
  const Graph g = Graph::build(4, edges);
  CHECK(dw_solve(g, VertexSet{1}).edges.empty());
  CHECK(dw_solve(g, VertexSet{1}).weight == 0);
  CHECK(dw_solve(g, VertexSet{0, 2}).weight == 4);
  CHECK_THROWS_AS(dw_solve(g, VertexSet{}), InvalidInput);
  CHECK_THROWS_AS(dw_solve(g, VertexSet{0, 3}), NoSteinerTree);
  CHECK_THROWS_AS(dw_solve(g, VertexSet{0, 9}), InvalidInput);
}

TEST_CASE("every table entry satisfies its recursion") {
  for (unsigned i = 0; i < 10; ++i) {
    const Instance inst = generate(oracle::corpus_config(i)).instance;
    const std::vector<Vertex> terms(inst.terminals.begin(), inst.terminals.end());
    const DwTable table = DwTable::build(inst.graph, terms, static_cast<unsigned>(terms.size()));
    const auto dist = oracle::enumerated_distances(inst.graph);
    for (std::uint64_t x : table.masks()) {
      for (Vertex p = 0; p < inst.graph.vertex_count(); ++p) {
        const TerminalMask m(x, table.width());
        CHECK(table.weight(m, p) == oracle::dw_minimand(table, dist, x, p));
      }
    }
  }
}

TEST_CASE("table entries reconstruct to trees of the stated weight") {
  const Instance inst = generate(oracle::corpus_config(7)).instance;
  const std::vector<Vertex> terms(inst.terminals.begin(), inst.terminals.end());
  const DwTable table = DwTable::build(inst.graph, terms, static_cast<unsigned>(terms.size()) - 1);
  for (std::uint64_t x : table.masks()) {
    const TerminalMask m(x, table.width());
    if (m.none()) continue;
    const SteinerTree t = table.reconstruct_subset(m);
    CHECK(t.weight == table.subset_weight(m));
    CHECK(t.weight == oracle::steiner_weight(inst.graph, to_vertex_set(m, terms)));
  }
}

TEST_CASE("mask counts and bounded tables") {
  const Instance inst = generate(oracle::corpus_config(4)).instance;  // k = 6
  const std::vector<Vertex> terms(inst.terminals.begin(), inst.terminals.end());
  REQUIRE(terms.size() == 6);
  const DwTable t2 = DwTable::build(inst.graph, terms, 2);
  CHECK(t2.mask_count() == 1 + 6 + 15);
  CHECK_FALSE(t2.contains(TerminalMask(0b111, 6), 0));
  CHECK_THROWS_AS(t2.weight(TerminalMask(0b111, 6), 0), InvalidInput);
  CHECK(t2.has_subset(TerminalMask(0b111, 6)));
  CHECK_FALSE(t2.has_subset(TerminalMask(0b1111, 6)));

  CHECK(bounded_size_cap(0.5, 8) == 4);
  CHECK(bounded_size_cap(0.28325, 6) == 2);
  CHECK_THROWS_AS(dw_bounded(inst.graph, inst.terminals, 0.6), InvalidInput);
  const DwTable b = dw_bounded(inst.graph, inst.terminals, 0.5);
  CHECK(b.mask_cap() == 3);
  for (std::uint64_t x = 1; x < 64; ++x) {
    const TerminalMask m(x, 6);
    if (m.count() > 4) continue;
    CHECK(b.subset_weight(m) == oracle::steiner_weight(inst.graph, to_vertex_set(m, terms)));
  }
}

TEST_CASE("duplicate terminals are tolerated") {
  const std::vector<Edge> edges{{0, 1, 1}, {1, 2, 1}};
  const Graph g = Graph::build(3, edges);
  const std::vector<Vertex> terms{0, 2, 2};
  const DwTable t = DwTable::build(g, terms, 2);
  CHECK(t.subset_weight(TerminalMask(0b111, 3)) == 2);
}

TEST_CASE("bounded subsets are ordered by size then lexicographically") {
  const auto s = bounded_subsets(4, 2);
  REQUIRE(s.size() == 1 + 4 + 6);
  CHECK(s[0].empty());
  CHECK(s[1] == VertexSet{0});
  CHECK(s[5] == VertexSet{0, 1});
  CHECK(s[10] == VertexSet{2, 3});
  CHECK(std::is_sorted(s.begin() + 5, s.end()));
}

TEST_CASE("step-1 tables hold both families of values") {
  const Instance inst = generate(oracle::corpus_config(13)).instance;
  const std::vector<Vertex> terms(inst.terminals.begin(), inst.terminals.end());
  const std::size_t k = terms.size();
  const Step1Tables s = precompute_step1(inst.graph, inst.terminals, 0.28325, 0.25, 2);
  CHECK(s.size_cap() == step1_size_cap(k, 0.28325, 0.25));
  CHECK(s.split_sets().size() == oracle::binomial(inst.graph.vertex_count(), 0) +
                                     oracle::binomial(inst.graph.vertex_count(), 1) +
                                     oracle::binomial(inst.graph.vertex_count(), 2));
  for (const VertexSet& a : s.split_sets()) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); ++x) {
      const TerminalMask m(x, static_cast<unsigned>(k));
      if (!s.has_key(m, a)) continue;
      const VertexSet with = to_vertex_set(m, terms).united(a);
      CHECK(s.weight_with_set(m, a) == oracle::steiner_weight(inst.graph, with));
      if (a.empty()) continue;
      const ContractedGraph& cg = s.contracted(a);
      VertexSet images{cg.contracted_vertex};
      for (Vertex t : to_vertex_set(m, terms)) images = images.united(VertexSet{cg.image_of(t)});
      CHECK(s.weight_contracted(m, a) == oracle::steiner_weight(cg.graph, images));
    }
  }
  CHECK(s.entry_count() > 0);
}

TEST_CASE("step-1 parameter checks") {
  const Instance inst = generate(oracle::corpus_config(2)).instance;
  CHECK(split_set_bound(0.25) == 2);
  CHECK(split_set_bound(0.1) == 4);
  CHECK_THROWS_AS(split_set_bound(0), InvalidInput);
  CHECK_THROWS_AS(precompute_step1(inst.graph, inst.terminals, 0.7, 0.25, 1), InvalidInput);
  CHECK_THROWS_AS(precompute_step1(inst.graph, inst.terminals, 0.3, 0.25, 3), InvalidInput);
  CHECK_THROWS_AS(step1_size_cap(4, 0.3, 0.25, 0), InvalidInput);
  CHECK(step1_size_cap(100, 0.28325, 0.001) == 20);
  CHECK(step1_size_cap(8, 0.28325, 0.25) == 8);
}
