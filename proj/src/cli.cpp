#include "qsteiner/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "qsteiner/analysis.hpp"
#include "qsteiner/results.hpp"
#include "qsteiner/split_solver.hpp"
#include "qsteiner/stp_io.hpp"

namespace qsteiner {

namespace {

enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };

LogLevel log_level_from_env() {
  const char* raw = std::getenv("STEINER_LOG");
  if (raw == nullptr) return LogLevel::kWarn;
  const std::string v(raw);
  if (v == "error" || v == "0") return LogLevel::kError;
  if (v == "info" || v == "2") return LogLevel::kInfo;
  if (v == "debug" || v == "3") return LogLevel::kDebug;
  return LogLevel::kWarn;
}

class Logger {
 public:
  explicit Logger(std::ostream& err) : err_(err), level_(log_level_from_env()) {}

  void error(const std::string& msg) const { emit(LogLevel::kError, "error", msg); }
  void warn(const std::string& msg) const { emit(LogLevel::kWarn, "warning", msg); }
  void info(const std::string& msg) const { emit(LogLevel::kInfo, "info", msg); }
  void debug(const std::string& msg) const { emit(LogLevel::kDebug, "debug", msg); }

 private:
  void emit(LogLevel l, const char* tag, const std::string& msg) const {
    if (l <= level_) err_ << "[" << tag << "] " << msg << "\n";
  }

  std::ostream& err_;
  LogLevel level_;
};

struct Options {
  std::vector<std::string> inputs;
  std::string gen;
  std::string algorithm = "dw";
  SplitParams split;
  bool no_memo = false;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::string out;
  bool record_time = false;

  // bench
  unsigned k_min = 4;
  unsigned k_max = 8;
  unsigned per_k = 2;
  unsigned n_extra = 2;
  double density = 0.5;
  unsigned wmax = 10;

  // analyze
  std::optional<double> beta_point;
  unsigned max_levels = 4;
  bool csv = false;

  // splits
  double alpha = 0.5;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("inputs", o.inputs, "STP files or directories of .stp files");
  sub->add_option("--gen", o.gen, "generate an instance instead: n,k,density,wmax");
  sub->add_option("--beta", o.split.beta, "last-level split fraction beta")->capture_default_str();
  sub->add_option("--epsilon", o.split.epsilon, "window slack epsilon")->capture_default_str();
  sub->add_option("--a-cap", o.split.a_cap, "largest split set |A|")->capture_default_str();
  sub->add_option("--levels", o.split.levels, "nested search levels")->capture_default_str();
  sub->add_option("--dh-constant", o.split.dh_constant, "multiplier of the sqrt(N) query model")
      ->capture_default_str();
  sub->add_flag("--no-memo", o.no_memo, "evaluate every subproblem afresh");
  sub->add_option("--seed", o.seed, "seed for every random choice")->capture_default_str();
  sub->add_option("--jobs", o.jobs, "instances processed in parallel")->capture_default_str();
  sub->add_option("--out", o.out, "write results to this file (.json for JSON, CSV otherwise)");
  sub->add_flag("--record-time", o.record_time, "fill time_ms (otherwise 0, keeping output reproducible)");
}

std::vector<Instance> load_inputs(const Options& o, const Logger& log) {
  std::vector<Instance> out;
  if (!o.gen.empty()) {
    if (!o.inputs.empty()) throw InvalidInput("--gen and input files are mutually exclusive");
    std::vector<std::string> parts;
    std::stringstream ss(o.gen);
    for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
    if (parts.size() != 4) throw InvalidInput("--gen expects n,k,density,wmax");
    GeneratorConfig cfg;
    try {
      cfg.n = std::stoul(parts[0]);
      cfg.k = std::stoul(parts[1]);
      cfg.density = std::stod(parts[2]);
      cfg.max_weight = static_cast<unsigned>(std::stoul(parts[3]));
    } catch (const std::logic_error&) {
      throw InvalidInput("--gen expects n,k,density,wmax");
    }
    cfg.seed = o.seed;
    Generated g = generate(cfg);
    if (g.retries > 0) log.info("generator discarded " + std::to_string(g.retries) + " disconnected draws");
    out.push_back(std::move(g.instance));
    return out;
  }
  std::vector<std::string> files;
  for (const std::string& path : o.inputs) {
    if (std::filesystem::is_directory(path)) {
      std::vector<std::string> found;
      for (const auto& entry : std::filesystem::directory_iterator(path)) {
        if (entry.path().extension() == ".stp") found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(path);
    }
  }
  for (const std::string& f : files) {
    std::vector<std::string> warnings;
    try {
      Instance inst = read_stp_file(f, &warnings);
      if (inst.name.empty()) inst.name = std::filesystem::path(f).stem().string();
      out.push_back(std::move(inst));
    } catch (const ParseError&) {
      log.error("while reading " + f);
      throw;
    }
    for (const std::string& w : warnings) log.warn(f + ": " + w);
  }
  return out;
}

SplitParams effective_params(const Options& o) {
  SplitParams p = o.split;
  p.memoize = !o.no_memo;
  p.validate();
  return p;
}

ResultRecord run_algorithm(const Instance& inst, Algorithm algo, const SplitParams& params,
                           bool record_time) {
  ResultRecord r;
  r.instance = inst.name;
  r.algorithm = algo;
  r.beta = params.beta;
  r.epsilon = params.epsilon;
  r.a_cap = params.a_cap;
  r.levels = params.levels;
  r.memoize = params.memoize;
  const auto start = std::chrono::steady_clock::now();
  SteinerTree tree;
  switch (algo) {
    case Algorithm::kDw:
      tree = dw_solve(inst.graph, inst.terminals);
      break;
    case Algorithm::kOracle:
      tree = brute_force_steiner(inst.graph, inst.terminals);
      break;
    case Algorithm::kHybrid: {
      HybridResult h = hybrid_solve(inst.graph, inst.terminals, params);
      tree = std::move(h.tree);
      r.ledger = std::move(h.ledger);
      r.widenings = std::move(h.widenings);
      r.a_cap = h.params.a_cap;
      break;
    }
  }
  if (record_time) {
    r.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  r.weight = tree.weight;
  r.edges = std::move(tree.edges);
  return r;
}

// Runs fn(i) for i in [0, count) on up to `jobs` threads; exceptions surface in index order.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  std::vector<std::exception_ptr> errors(count);
  auto guarded = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) guarded(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, count); ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) guarded(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void write_records(const std::string& path, const std::vector<ResultRecord>& records) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + path);
  if (path.ends_with(".json")) {
    f << results_json(records) << "\n";
  } else {
    f << results_csv(records);
  }
}

std::string vertex_list(const VertexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i] + 1);
  }
  return out + "}";
}

void print_record(std::ostream& out, const ResultRecord& r) {
  out << "instance " << r.instance << "\n";
  out << "algorithm " << to_string(r.algorithm) << "\n";
  out << "weight " << format_weight(r.weight) << "\n";
  out << "edges " << r.edges.size() << "\n";
  for (const Edge& e : r.edges) {
    out << "  " << e.u + 1 << " " << e.v + 1 << " " << format_weight(e.w) << "\n";
  }
  if (r.ledger) {
    for (const LevelRecord& l : r.ledger->levels()) {
      out << "level " << l.level << " invocations " << l.invocations << " classical "
          << l.classical_evaluations << " quantum " << l.quantum_queries << "\n";
    }
    out << "total classical " << r.ledger->total_classical() << " quantum "
        << r.ledger->total_quantum() << "\n";
    out << "leaf values from tables " << r.ledger->leaf_table_hits << ", computed on demand "
        << r.ledger->leaf_fallbacks << "\n";
    for (const Widening& w : r.widenings) {
      out << "widened to slack " << w.slack << ", a_cap " << w.a_cap << ": " << w.reason << "\n";
    }
  }
}

int cmd_solve(const Options& o, std::ostream& out, const Logger& log) {
  const Algorithm algo = parse_algorithm(o.algorithm);
  const SplitParams params = effective_params(o);
  const auto instances = load_inputs(o, log);
  std::vector<ResultRecord> records(instances.size());
  parallel_for(instances.size(), o.jobs,
               [&](std::size_t i) {
                 records[i] = run_algorithm(instances[i], algo, params, o.record_time);
               });
  for (const ResultRecord& r : records) print_record(out, r);
  if (!o.out.empty()) write_records(o.out, records);
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, const Logger& log) {
  const SplitParams params = effective_params(o);
  const auto instances = load_inputs(o, log);
  if (instances.empty()) {
    log.warn("no instances to verify");
    out << "verified 0 instances, 0 mismatches\n";
    return kExitOk;
  }
  struct Row {
    Weight dw = 0;
    Weight hybrid = 0;
    std::optional<Weight> oracle;
    std::vector<ResultRecord> records;
  };
  std::vector<Row> rows(instances.size());
  parallel_for(instances.size(), o.jobs, [&](std::size_t i) {
    Row& row = rows[i];
    row.records.push_back(run_algorithm(instances[i], Algorithm::kDw, params, o.record_time));
    row.records.push_back(run_algorithm(instances[i], Algorithm::kHybrid, params, o.record_time));
    row.dw = row.records[0].weight;
    row.hybrid = row.records[1].weight;
    try {
      row.records.push_back(run_algorithm(instances[i], Algorithm::kOracle, params, o.record_time));
      row.oracle = row.records[2].weight;
    } catch (const GuardExceeded&) {
      // oracle out of reach; compared without it
    }
  });

  std::size_t mismatches = 0;
  std::vector<ResultRecord> all;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& row = rows[i];
    const Instance& inst = instances[i];
    if (!row.oracle) log.warn(inst.name + ": oracle skipped (too many Steiner candidates)");
    bool ok = row.dw == row.hybrid && (!row.oracle || *row.oracle == row.dw) &&
              (!inst.optimum || *inst.optimum == row.dw);
    if (!ok) {
      if (mismatches == 0) out << "instance dw hybrid oracle optimum\n";
      ++mismatches;
      out << inst.name << " " << format_weight(row.dw) << " " << format_weight(row.hybrid) << " "
          << (row.oracle ? format_weight(*row.oracle) : "-") << " "
          << (inst.optimum ? format_weight(*inst.optimum) : "-") << "\n";
    }
    all.insert(all.end(), row.records.begin(), row.records.end());
  }
  out << "verified " << rows.size() << " instances, " << mismatches << " mismatches\n";
  if (!o.out.empty()) write_records(o.out, all);
  return mismatches == 0 ? kExitOk : kExitInfeasible;
}

int cmd_bench(const Options& o, std::ostream& out, const Logger& log) {
  const SplitParams params = effective_params(o);
  if (o.k_min < 1 || o.k_min > o.k_max) throw InvalidInput("need 1 <= k-min <= k-max");
  struct Job {
    unsigned k;
    unsigned n;
    Instance instance;
  };
  std::vector<Job> jobs;
  for (unsigned k = o.k_min; k <= o.k_max; ++k) {
    for (unsigned i = 0; i < o.per_k; ++i) {
      GeneratorConfig cfg;
      cfg.seed = o.seed * 1000003ULL + k * 1000ULL + i;
      cfg.n = k + o.n_extra;
      cfg.k = k;
      cfg.density = o.density;
      cfg.max_weight = o.wmax;
      Generated g = generate(cfg);
      if (g.retries > 0) log.debug(g.instance.name + ": " + std::to_string(g.retries) + " retries");
      jobs.push_back(Job{k, static_cast<unsigned>(cfg.n), std::move(g.instance)});
    }
  }
  std::vector<ResultRecord> records(jobs.size());
  parallel_for(jobs.size(), o.jobs, [&](std::size_t i) {
    records[i] = run_algorithm(jobs[i].instance, Algorithm::kHybrid, params, o.record_time);
  });

  out << kCsvHeader << ",n,k,predicted_level1_N,level1_match\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto predicted = predicted_search_sizes(jobs[i].k, jobs[i].n, params);
    const std::uint64_t level1 = predicted[0].drivers.at(0).driver * predicted[0].split_sets;
    const LevelRecord* rec = records[i].ledger->level(1);
    const std::uint64_t recorded = rec ? rec->classical_evaluations : 0;
    // Widening changes the windows, so only unwidened runs are expected to match.
    const bool match = records[i].widenings.empty() && recorded == level1;
    out << results_csv_row(records[i]) << ',' << jobs[i].n << ',' << jobs[i].k << ',' << level1
        << ',' << (match ? "yes" : "no") << "\n";
  }
  if (!o.out.empty()) write_records(o.out, records);
  return kExitOk;
}

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  if (o.beta_point) {
    const ExponentReport r = exponent_report(*o.beta_point, o.split.levels);
    out << "levels " << r.levels << " beta " << fixed(r.beta, 5) << "\n";
    out << "classical exponent " << fixed(r.classical) << "\n";
    out << "quantum exponent " << fixed(r.quantum) << "\n";
    out << "printed closed form " << fixed(printed_quantum_exponent(r.beta, r.levels)) << "\n";
    out << "base " << fixed(r.base) << " (" << to_string(r.binding) << " side binds)\n";
    return kExitOk;
  }
  const ExponentReport best = solve_beta(o.split.levels);
  const auto rows = table2(std::max(o.max_levels, o.split.levels));
  if (o.csv) {
    out << "levels,beta,classical,quantum,printed_quantum,quantum_floor,overall,base,binding,note\n";
    for (const Table2Row& row : rows) {
      const ExponentReport& r = row.report;
      out << r.levels << ',' << fixed(r.beta, 6) << ',' << fixed(r.classical, 6) << ','
          << fixed(r.quantum, 6) << ',' << fixed(row.printed_quantum, 6) << ','
          << fixed(row.quantum_floor, 6) << ',' << fixed(r.overall, 6) << ',' << fixed(r.base, 6)
          << ',' << to_string(r.binding) << ",\"" << row.note << "\"\n";
    }
    return kExitOk;
  }
  out << "levels " << best.levels << "\n";
  out << "beta* " << fixed(best.beta, 5) << " (" << to_string(best.binding) << ")\n";
  out << "classical exponent " << fixed(best.classical) << "\n";
  out << "quantum exponent " << fixed(best.quantum) << "\n";
  out << "base " << fixed(best.base) << "\n\n";
  out << "levels  beta     classical  quantum  base    binding\n";
  for (const Table2Row& row : rows) {
    const ExponentReport& r = row.report;
    char line[160];
    std::snprintf(line, sizeof line, "%-7u %-8s %-10s %-8s %-7s %s\n", r.levels,
                  fixed(r.beta, 5).c_str(), fixed(r.classical).c_str(), fixed(r.quantum).c_str(),
                  fixed(r.base).c_str(), to_string(r.binding).c_str());
    out << line;
  }
  out << "\nnotes\n";
  for (const Table2Row& row : rows) {
    if (!row.note.empty()) out << "  levels " << row.report.levels << ": " << row.note << "\n";
    if (row.report.binding == Binding::kQuantum) {
      out << "  levels " << row.report.levels << ": quantum side dominates for every beta; its "
          << "infimum " << fixed(row.quantum_floor) << " is approached as beta -> 0\n";
    }
  }
  return kExitOk;
}

int cmd_splits(const Options& o, std::ostream& out, const Logger& log) {
  const auto instances = load_inputs(o, log);
  bool all_ok = true;
  for (const Instance& inst : instances) {
    const SteinerTree tree = dw_solve(inst.graph, inst.terminals);
    out << "instance " << inst.name << " weight " << format_weight(tree.weight) << " edges "
        << tree.edges.size() << "\n";
    std::size_t count = 0;
    std::size_t lemma_failures = 0;
    std::size_t malformed = 0;
    for_each_2split(tree, inst.terminals, [&](const TwoSplit& s) {
      ++count;
      if (!check_two_split(tree, inst.terminals, s).ok()) ++malformed;
      if (!verify_lemma2(inst.graph, inst.terminals, tree, s).ok()) ++lemma_failures;
    });
    out << "  two-splits " << count << ", malformed " << malformed << ", sub-optimality failures "
        << lemma_failures << "\n";
    const auto witness = verify_theorem3(inst.graph, inst.terminals, tree, o.alpha, o.split.epsilon);
    if (witness) {
      out << "  witness alpha " << o.alpha << " eta " << o.split.epsilon << ": K1 "
          << vertex_list(witness->k1) << " A " << vertex_list(witness->split_nodes) << " K2 "
          << vertex_list(witness->k2) << "\n";
    } else {
      out << "  witness alpha " << o.alpha << " eta " << o.split.epsilon << ": none\n";
    }
    // A single edge between two terminals has no balanced split, so only k >= 3 must have one.
    const bool witness_ok = witness.has_value() || inst.terminals.size() <= 2;
    all_ok = all_ok && malformed == 0 && lemma_failures == 0 && witness_ok;
  }
  return all_ok ? kExitOk : kExitInfeasible;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Logger log(err);
  Options o;
  CLI::App app{"Steiner tree solvers: Dreyfus-Wagner, nested minimum finding, brute force"};
  app.name("qsteiner");
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "solve instances with one algorithm");
  add_common(solve, o);
  solve->add_option("--algorithm", o.algorithm, "dw, hybrid or oracle")
      ->check(CLI::IsMember({"dw", "hybrid", "oracle"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "cross-check dw, hybrid and oracle weights");
  add_common(verify, o);

  auto* bench = app.add_subcommand("bench", "sweep k on generated instances and record ledgers");
  add_common(bench, o);
  bench->add_option("--k-min", o.k_min)->capture_default_str();
  bench->add_option("--k-max", o.k_max)->capture_default_str();
  bench->add_option("--per-k", o.per_k, "instances per k")->capture_default_str();
  bench->add_option("--n-extra", o.n_extra, "non-terminal vertices per instance")->capture_default_str();
  bench->add_option("--density", o.density)->capture_default_str();
  bench->add_option("--wmax", o.wmax)->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "exponents, the optimal beta and the level table");
  analyze->add_option("--levels", o.split.levels)->capture_default_str();
  analyze->add_option("--beta", o.beta_point, "evaluate both exponents at this beta");
  analyze->add_option("--max-levels", o.max_levels, "rows in the level table")->capture_default_str();
  analyze->add_flag("--csv", o.csv, "print the level table as CSV");

  auto* splits = app.add_subcommand("splits", "enumerate and validate two-splits of optimal trees");
  add_common(splits, o);
  splits->add_option("--alpha", o.alpha, "target fraction for the witness search")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (*solve) return cmd_solve(o, out, log);
    if (*verify) return cmd_verify(o, out, log);
    if (*bench) return cmd_bench(o, out, log);
    if (*analyze) return cmd_analyze(o, out);
    if (*splits) return cmd_splits(o, out, log);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const NoSteinerTree& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const GuardExceeded& e) {
    err << "guard: " << e.what() << "\n";
    return kExitGuard;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitParse;
}

}  // namespace qsteiner
