#pragma once

// Independent reference implementations used only by tests. Nothing here calls into the
// solvers under test except for plain data types.

#include <cstdint>
#include <string>
#include <vector>

#include "qsteiner/dreyfus_wagner.hpp"
#include "qsteiner/graph.hpp"
#include "qsteiner/stp_io.hpp"

namespace oracle {

using qsteiner::Graph;
using qsteiner::Vertex;
using qsteiner::VertexSet;
using qsteiner::Weight;

/// Shortest a-b distance by enumerating every simple path (depth-first). Exponential; n <= 12.
Weight path_enumeration_distance(const Graph& g, Vertex a, Vertex b);

/// Distance matrix from path_enumeration_distance.
std::vector<std::vector<Weight>> enumerated_distances(const Graph& g);

/// Lightest spanning tree of G[s] by enumerating every (|s|-1)-edge subset of the induced edges.
/// Infinity when G[s] is disconnected. Used to cross-check small cases only.
Weight enumerated_spanning_tree(const Graph& g, const VertexSet& s);

/// Minimum Steiner tree weight: every Steiner vertex subset, Prim on the induced subgraph.
/// Infinity when the terminals are disconnected.
Weight steiner_weight(const Graph& g, const VertexSet& terminals);

/// Eq.-1 minimand for table entry (x, p), recomputed from the table's smaller entries and
/// enumerated distances. Returns the recomputed value.
Weight dw_minimand(const qsteiner::DwTable& table, const std::vector<std::vector<Weight>>& dist,
                   std::uint64_t x, Vertex p);

/// C(n, r) by Pascal's triangle (exact for n <= 62).
std::uint64_t binomial(unsigned n, unsigned r);

/// Seeded instance family shared by the corpus tool and the tests: instance i in [0, 200).
qsteiner::GeneratorConfig corpus_config(unsigned i);
std::vector<qsteiner::Instance> corpus(unsigned count = 200);

}  // namespace oracle
