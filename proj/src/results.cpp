#include "qsteiner/results.hpp"

#include <sstream>

#include "json.hpp"
#include "qsteiner/stp_io.hpp"

namespace qsteiner {

using nlohmann::json;

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kDw:
      return "dw";
    case Algorithm::kHybrid:
      return "hybrid";
    case Algorithm::kOracle:
      return "oracle";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "dw") return Algorithm::kDw;
  if (name == "hybrid") return Algorithm::kHybrid;
  if (name == "oracle") return Algorithm::kOracle;
  throw InvalidInput("unknown algorithm '" + std::string(name) + "'");
}

bool operator==(const ResultRecord& a, const ResultRecord& b) {
  auto same_widenings = [](const std::vector<Widening>& x, const std::vector<Widening>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].slack != y[i].slack || x[i].a_cap != y[i].a_cap || x[i].reason != y[i].reason) {
        return false;
      }
    }
    return true;
  };
  return a.instance == b.instance && a.algorithm == b.algorithm && a.weight == b.weight &&
         a.edges == b.edges && a.ledger == b.ledger && a.beta == b.beta &&
         a.epsilon == b.epsilon && a.a_cap == b.a_cap && a.levels == b.levels &&
         a.memoize == b.memoize && same_widenings(a.widenings, b.widenings) &&
         a.time_ms == b.time_ms;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

json ledger_json(const QueryLedger& l) {
  json levels = json::array();
  for (const LevelRecord& r : l.levels()) {
    json shapes = json::array();
    for (const auto& [shape, count] : r.shapes) {
      shapes.push_back({{"driver", shape.driver}, {"poly", shape.poly}, {"count", count}});
    }
    levels.push_back({{"level", r.level},
                      {"invocations", r.invocations},
                      {"classical_evaluations", r.classical_evaluations},
                      {"quantum_queries", r.quantum_queries},
                      {"shapes", shapes}});
  }
  return {{"dh_constant", l.dh_constant()},
          {"levels", levels},
          {"classical_evaluations", l.total_classical()},
          {"quantum_queries", l.total_quantum()},
          {"leaf_table_hits", l.leaf_table_hits},
          {"leaf_fallbacks", l.leaf_fallbacks}};
}

QueryLedger ledger_from_json(const json& j) {
  QueryLedger l(j.at("dh_constant").get<double>());
  for (const json& r : j.at("levels")) {
    const auto level = r.at("level").get<unsigned>();
    for (const json& s : r.at("shapes")) {
      l.record(level, SearchShape{s.at("driver").get<std::uint64_t>(), s.at("poly").get<std::uint64_t>()},
               s.at("count").get<std::uint64_t>());
    }
  }
  l.leaf_table_hits = j.at("leaf_table_hits").get<std::uint64_t>();
  l.leaf_fallbacks = j.at("leaf_fallbacks").get<std::uint64_t>();
  return l;
}

json record_json(const ResultRecord& r) {
  json edges = json::array();
  for (const Edge& e : r.edges) edges.push_back({e.u, e.v, e.w});
  json widenings = json::array();
  for (const Widening& w : r.widenings) {
    widenings.push_back({{"slack", w.slack}, {"a_cap", w.a_cap}, {"reason", w.reason}});
  }
  json j = {{"instance", r.instance},
            {"algorithm", to_string(r.algorithm)},
            {"weight", r.weight},
            {"edges", edges},
            {"beta", r.beta},
            {"epsilon", r.epsilon},
            {"a_cap", r.a_cap},
            {"levels", r.levels},
            {"memoize", r.memoize},
            {"widenings", widenings},
            {"time_ms", r.time_ms}};
  j["ledger"] = r.ledger ? ledger_json(*r.ledger) : json(nullptr);
  return j;
}

ResultRecord record_from_json(const json& j) {
  ResultRecord r;
  r.instance = j.at("instance").get<std::string>();
  r.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  r.weight = j.at("weight").get<double>();
  for (const json& e : j.at("edges")) {
    r.edges.push_back(Edge{e.at(0).get<Vertex>(), e.at(1).get<Vertex>(), e.at(2).get<double>()});
  }
  r.beta = j.at("beta").get<double>();
  r.epsilon = j.at("epsilon").get<double>();
  r.a_cap = j.at("a_cap").get<unsigned>();
  r.levels = j.at("levels").get<unsigned>();
  r.memoize = j.at("memoize").get<bool>();
  for (const json& w : j.at("widenings")) {
    r.widenings.push_back(Widening{w.at("slack").get<unsigned>(), w.at("a_cap").get<unsigned>(),
                                   w.at("reason").get<std::string>()});
  }
  r.time_ms = j.at("time_ms").get<double>();
  if (!j.at("ledger").is_null()) r.ledger = ledger_from_json(j.at("ledger"));
  return r;
}

}  // namespace

std::string results_csv_row(const ResultRecord& r) {
  std::ostringstream out;
  out << csv_field(r.instance) << ',' << to_string(r.algorithm) << ',' << format_weight(r.weight)
      << ',' << format_weight(r.time_ms);
  for (unsigned level = 1; level <= 3; ++level) {
    const LevelRecord* rec = r.ledger ? r.ledger->level(level) : nullptr;
    if (rec) {
      out << ',' << rec->classical_evaluations << ',' << rec->quantum_queries;
    } else if (r.ledger) {
      out << ",0,0";
    } else {
      out << ",,";
    }
  }
  if (r.ledger) {
    out << ',' << r.ledger->total_classical() << ',' << r.ledger->total_quantum();
  } else {
    out << ",,";
  }
  out << ',' << format_weight(r.beta) << ',' << format_weight(r.epsilon) << ',' << r.a_cap << ','
      << r.levels << ',' << r.widenings.size();
  return out.str();
}

std::string results_csv(std::span<const ResultRecord> records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const ResultRecord& r : records) {
    out += results_csv_row(r);
    out += '\n';
  }
  return out;
}

std::string results_json(std::span<const ResultRecord> records, int indent) {
  json arr = json::array();
  for (const ResultRecord& r : records) arr.push_back(record_json(r));
  return arr.dump(indent);
}

std::vector<ResultRecord> parse_results_json(std::string_view text) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed results JSON: ") + e.what());
  }
  if (!arr.is_array()) throw InvalidInput("results JSON must be an array");
  std::vector<ResultRecord> out;
  for (const json& j : arr) out.push_back(record_from_json(j));
  return out;
}

}  // namespace qsteiner
