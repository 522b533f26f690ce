#include "qsteiner/stp_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace qsteiner {

namespace {

constexpr std::string_view kMagic = "33D32945";

struct Token {
  std::string_view text;
  std::size_t column = 0;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    if (line[i] == '"') {
      ++i;
      while (i < line.size() && line[i] != '"') ++i;
      if (i < line.size()) ++i;
    } else {
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    }
    out.push_back(Token{line.substr(start, i - start), start + 1});
  }
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

class Parser {
 public:
  Parser(std::string_view text, std::vector<std::string>* warnings)
      : text_(text), warnings_(warnings) {}

  Instance run() {
    expect_header();
    bool saw_graph = false;
    bool saw_eof = false;
    while (next_line()) {
      if (tokens_.empty()) continue;
      const Token& head = tokens_[0];
      if (iequals(head.text, "EOF")) {
        saw_eof = true;
        break;
      }
      if (!iequals(head.text, "SECTION")) fail(head, "expected SECTION or EOF");
      if (tokens_.size() < 2) fail(head, "SECTION needs a name");
      const std::string_view section = tokens_[1].text;
      if (iequals(section, "Comment")) {
        comment_section();
      } else if (iequals(section, "Graph")) {
        graph_section();
        saw_graph = true;
      } else if (iequals(section, "Terminals")) {
        terminal_section();
      } else {
        warn("skipping unknown section " + std::string(section));
        skip_section();
      }
    }
    if (!saw_eof) fail_at(line_no_ + 1, 1, "missing EOF marker");
    if (!saw_graph) fail_at(line_no_, 1, "missing Graph section");

    Instance inst;
    inst.name = name_;
    inst.optimum = optimum_;
    inst.graph = Graph::build(nodes_, edges_);
    inst.terminals = VertexSet(terminal_ids_);
    if (inst.terminals.size() != terminal_ids_.size()) {
      fail_at(terminals_line_, 1, "duplicate terminal");
    }
    return inst;
  }

 private:
  bool next_line() {
    if (pos_ >= text_.size()) return false;
    const std::size_t end = text_.find('\n', pos_);
    line_ = text_.substr(pos_, end == std::string_view::npos ? std::string_view::npos : end - pos_);
    pos_ = end == std::string_view::npos ? text_.size() : end + 1;
    ++line_no_;
    tokens_ = split_tokens(line_);
    if (!tokens_.empty() && tokens_[0].text.starts_with("#")) tokens_.clear();
    return true;
  }

  [[noreturn]] void fail_at(std::size_t line, std::size_t column, const std::string& what) const {
    throw ParseError(line, column, what);
  }
  [[noreturn]] void fail(const Token& t, const std::string& what) const {
    fail_at(line_no_, t.column, what);
  }

  void warn(const std::string& what) {
    if (warnings_) warnings_->push_back("line " + std::to_string(line_no_) + ": " + what);
  }

  void expect_header() {
    while (next_line()) {
      if (tokens_.empty()) continue;
      if (!iequals(tokens_[0].text, kMagic)) fail(tokens_[0], "missing STP header 33D32945");
      return;
    }
    fail_at(1, 1, "empty input");
  }

  bool at_end_marker() const { return !tokens_.empty() && iequals(tokens_[0].text, "END"); }

  void skip_section() {
    while (next_line()) {
      if (at_end_marker()) return;
    }
    fail_at(line_no_, 1, "section not closed by END");
  }

  std::uint64_t parse_count(const Token& t) const {
    std::uint64_t value = 0;
    const auto* first = t.text.data();
    const auto* last = first + t.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) fail(t, "expected a non-negative integer");
    return value;
  }

  Vertex parse_vertex(const Token& t, const Token& key) const {
    if (!have_nodes_) fail(key, "vertex referenced before Nodes");
    const std::uint64_t v = parse_count(t);
    if (v == 0 || v > nodes_) {
      fail(t, "vertex " + std::string(t.text) + " outside 1.." + std::to_string(nodes_));
    }
    return static_cast<Vertex>(v - 1);
  }

  Weight parse_weight(const Token& t, bool allow_zero = false) const {
    double value = 0;
    const auto* first = t.text.data();
    const auto* last = first + t.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) fail(t, "expected a number");
    if (!std::isfinite(value) || value < 0 || (value == 0 && !allow_zero)) {
      fail(t, allow_zero ? "expected a non-negative weight" : "edge weights must be positive");
    }
    return value;
  }

  void require_args(std::size_t count) const {
    if (tokens_.size() != count + 1) {
      fail(tokens_[0], std::string(tokens_[0].text) + " takes " + std::to_string(count) +
                           " argument" + (count == 1 ? "" : "s"));
    }
  }

  void comment_section() {
    while (next_line()) {
      if (tokens_.empty()) continue;
      if (at_end_marker()) return;
      const Token& key = tokens_[0];
      if (iequals(key.text, "Name")) {
        // The name is everything after the key, quotes stripped.
        const std::string_view rest = line_.substr(std::min(line_.size(), key.column - 1 + key.text.size()));
        const auto open = rest.find('"');
        const auto close = rest.rfind('"');
        if (open == std::string_view::npos || close == open) fail(key, "Name needs a quoted string");
        name_ = std::string(rest.substr(open + 1, close - open - 1));
      } else if (iequals(key.text, "Optimum")) {
        require_args(1);
        optimum_ = parse_weight(tokens_[1], true);
      } else {
        warn("ignoring comment key " + std::string(key.text));
      }
    }
    fail_at(line_no_, 1, "section not closed by END");
  }

  void graph_section() {
    std::optional<std::uint64_t> declared_edges;
    std::size_t edges_line = 0;
    while (next_line()) {
      if (tokens_.empty()) continue;
      const Token& key = tokens_[0];
      if (at_end_marker()) {
        if (!have_nodes_) fail(key, "Graph section without Nodes");
        if (declared_edges && *declared_edges != edges_.size()) {
          fail_at(edges_line, 1, "Edges declares " + std::to_string(*declared_edges) + " but " +
                                     std::to_string(edges_.size()) + " were listed");
        }
        return;
      }
      if (iequals(key.text, "Nodes")) {
        require_args(1);
        nodes_ = parse_count(tokens_[1]);
        have_nodes_ = true;
      } else if (iequals(key.text, "Edges")) {
        require_args(1);
        declared_edges = parse_count(tokens_[1]);
        edges_line = line_no_;
      } else if (iequals(key.text, "E")) {
        require_args(3);
        const Vertex u = parse_vertex(tokens_[1], key);
        const Vertex v = parse_vertex(tokens_[2], key);
        if (u == v) fail(tokens_[2], "self-loop");
        const Weight w = parse_weight(tokens_[3]);
        edges_.push_back(Edge{std::min(u, v), std::max(u, v), w});
      } else {
        fail(key, "unexpected key " + std::string(key.text) + " in Graph section");
      }
    }
    fail_at(line_no_, 1, "section not closed by END");
  }

  void terminal_section() {
    std::optional<std::uint64_t> declared;
    std::size_t declared_line = 0;
    terminals_line_ = line_no_;
    while (next_line()) {
      if (tokens_.empty()) continue;
      const Token& key = tokens_[0];
      if (at_end_marker()) {
        if (declared && *declared != terminal_ids_.size()) {
          fail_at(declared_line, 1, "Terminals declares " + std::to_string(*declared) + " but " +
                                        std::to_string(terminal_ids_.size()) + " were listed");
        }
        return;
      }
      if (iequals(key.text, "Terminals")) {
        require_args(1);
        declared = parse_count(tokens_[1]);
        declared_line = line_no_;
      } else if (iequals(key.text, "T")) {
        require_args(1);
        terminal_ids_.push_back(parse_vertex(tokens_[1], key));
      } else {
        warn("ignoring terminal key " + std::string(key.text));
      }
    }
    fail_at(line_no_, 1, "section not closed by END");
  }

  std::string_view text_;
  std::vector<std::string>* warnings_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
  std::string_view line_;
  std::vector<Token> tokens_;

  std::string name_;
  std::optional<Weight> optimum_;
  std::uint64_t nodes_ = 0;
  bool have_nodes_ = false;
  std::vector<Edge> edges_;
  std::vector<Vertex> terminal_ids_;
  std::size_t terminals_line_ = 0;
};

}  // namespace

std::string format_weight(Weight w) {
  if (std::isfinite(w) && w == std::floor(w) && std::abs(w) < 9.007199254740992e15) {
    return std::to_string(static_cast<long long>(w));
  }
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), w);
  return std::string(buf.data(), ptr);
}

Instance parse_stp(std::string_view text, std::vector<std::string>* warnings) {
  return Parser(text, warnings).run();
}

std::string write_stp(const Instance& instance) {
  std::ostringstream out;
  out << kMagic << " STP File, STP Format Version 1.0\n\n";
  out << "SECTION Comment\n";
  out << "Name \"" << instance.name << "\"\n";
  if (instance.optimum) out << "Optimum " << format_weight(*instance.optimum) << "\n";
  out << "END\n\n";

  out << "SECTION Graph\n";
  out << "Nodes " << instance.graph.vertex_count() << "\n";
  out << "Edges " << instance.graph.edge_count() << "\n";
  for (const Edge& e : instance.graph.edges()) {
    out << "E " << e.u + 1 << ' ' << e.v + 1 << ' ' << format_weight(e.w) << "\n";
  }
  out << "END\n\n";

  out << "SECTION Terminals\n";
  out << "Terminals " << instance.terminals.size() << "\n";
  for (Vertex t : instance.terminals) out << "T " << t + 1 << "\n";
  out << "END\n\n";
  out << "EOF\n";
  return out.str();
}

Instance read_stp_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_stp(buf.str(), warnings);
}

void write_stp_file(const std::string& path, const Instance& instance) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << write_stp(instance);
}

Generated generate(const GeneratorConfig& config) {
  if (config.k > config.n) throw InvalidInput("k must not exceed n");
  if (config.n == 0) throw InvalidInput("n must be positive");
  if (!(config.density >= 0.0 && config.density <= 1.0)) {
    throw InvalidInput("density must lie in [0, 1]");
  }
  if (config.max_weight == 0) throw InvalidInput("max_weight must be positive");

  std::mt19937_64 rng(config.seed);
  std::bernoulli_distribution coin(config.density);
  std::uniform_int_distribution<unsigned> weight(1, config.max_weight);
  VertexSet everyone;
  {
    std::vector<Vertex> all(config.n);
    std::iota(all.begin(), all.end(), Vertex{0});
    everyone = VertexSet(std::move(all));
  }

  for (unsigned attempt = 0; attempt <= config.max_retries; ++attempt) {
    std::vector<Edge> edges;
    for (Vertex u = 0; u < config.n; ++u) {
      for (Vertex v = u + 1; v < config.n; ++v) {
        if (coin(rng)) edges.push_back(Edge{u, v, static_cast<Weight>(weight(rng))});
      }
    }
    Graph g = Graph::build(config.n, edges);
    if (!connects(g, everyone)) continue;

    std::vector<Vertex> order(everyone.begin(), everyone.end());
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(config.k);

    Generated out;
    out.retries = attempt;
    out.instance.name = "gen_n" + std::to_string(config.n) + "_k" + std::to_string(config.k) +
                        "_s" + std::to_string(config.seed);
    out.instance.graph = std::move(g);
    out.instance.terminals = VertexSet(std::move(order));
    return out;
  }
  throw InvalidInput("no connected graph after " + std::to_string(config.max_retries) +
                     " retries; raise the density");
}

}  // namespace qsteiner
