#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsteiner/graph.hpp"

namespace qsteiner {

struct Instance {
  std::string name;
  Graph graph;
  VertexSet terminals;
  std::optional<Weight> optimum;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// Parses SteinLib-style STP text (1-indexed on disk, 0-indexed in memory).
/// Unknown sections and keys are skipped; a note for each lands in `warnings` when given.
/// Throws ParseError with the offending line and column.
Instance parse_stp(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Canonical STP text: edges sorted by (u, v), weights printed as integers when integral and
/// in shortest round-trip form otherwise.
std::string write_stp(const Instance& instance);

Instance read_stp_file(const std::string& path, std::vector<std::string>* warnings = nullptr);
void write_stp_file(const std::string& path, const Instance& instance);

/// Shortest text that reads back to exactly `w`; integral values have no decimal point.
std::string format_weight(Weight w);

struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::size_t n = 10;
  std::size_t k = 4;
  double density = 0.3;
  unsigned max_weight = 10;
  unsigned max_retries = 1000;
};

struct Generated {
  Instance instance;
  unsigned retries = 0;  // disconnected draws discarded before this one
};

/// G(n, p) with integer weights in [1, max_weight] and a uniformly random k-subset of terminals,
/// redrawn until connected. Deterministic per seed. Throws InvalidInput when k > n, the density is
/// outside [0, 1], or no connected draw appears within max_retries.
Generated generate(const GeneratorConfig& config);

}  // namespace qsteiner
