#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsteiner/graph.hpp"
#include "qsteiner/ledger.hpp"
#include "qsteiner/split_solver.hpp"

namespace qsteiner {

enum class Algorithm { kDw, kHybrid, kOracle };

std::string to_string(Algorithm a);
/// Accepts "dw", "hybrid" and "oracle"; throws InvalidInput otherwise.
Algorithm parse_algorithm(std::string_view name);

struct ResultRecord {
  std::string instance;
  Algorithm algorithm = Algorithm::kDw;
  Weight weight = 0;
  std::vector<Edge> edges;
  std::optional<QueryLedger> ledger;  // hybrid only
  double beta = 0;
  double epsilon = 0;
  unsigned a_cap = 0;
  unsigned levels = 0;
  bool memoize = false;
  std::vector<Widening> widenings;
  double time_ms = 0;

  friend bool operator==(const ResultRecord&, const ResultRecord&);
};

inline constexpr std::string_view kCsvHeader =
    "instance,algorithm,weight,time_ms,level1_N,level1_q,level2_N,level2_q,level3_N,level3_q,"
    "classical_evals,quantum_queries,beta,epsilon,a_cap,levels,widenings";

/// One CSV row in header order, without the trailing newline.
std::string results_csv_row(const ResultRecord& record);

/// Header line plus one row per record; ledger columns stay empty for non-hybrid rows.
std::string results_csv(std::span<const ResultRecord> records);

/// JSON array mirroring every ResultRecord field.
std::string results_json(std::span<const ResultRecord> records, int indent = 2);
std::vector<ResultRecord> parse_results_json(std::string_view text);

}  // namespace qsteiner
