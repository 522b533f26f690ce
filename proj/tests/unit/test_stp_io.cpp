#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "oracles.hpp"
#include "qsteiner/stp_io.hpp"

using namespace qsteiner;

namespace {

const std::string kData = QSTEINER_TEST_DATA;

std::string minimal(const std::string& graph_body, const std::string& terminals = "Terminals 1\nT 1\n") {
  return "33D32945 STP File, STP Format Version 1.0\nSECTION Graph\n" + graph_body +
         "END\nSECTION Terminals\n" + terminals + "END\nEOF\n";
}

int error_line(const std::string& text) {
  try {
    parse_stp(text);
  } catch (const ParseError& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

}  // namespace

TEST_CASE("hand-written files parse") {
  std::vector<std::string> warnings;
  const Instance path = read_stp_file(kData + "/hand_path.stp", &warnings);
  CHECK(path.name == "hand_path");
  CHECK(path.graph.vertex_count() == 5);
  CHECK(path.graph.edge_count() == 5);
  CHECK(path.terminals == VertexSet{0, 2, 4});
  REQUIRE(path.optimum.has_value());
  CHECK(*path.optimum == 10);
  CHECK(warnings.size() == 2);  // Creator, Remark
  CHECK(dw_solve(path.graph, path.terminals).weight == *path.optimum);

  warnings.clear();
  const Instance star = read_stp_file(kData + "/hand_star.stp", &warnings);
  CHECK(star.terminals.size() == 4);
  CHECK(warnings.size() == 1);  // Coordinates
  CHECK(dw_solve(star.graph, star.terminals).weight == 12);

  const Instance frac = read_stp_file(kData + "/hand_fractional.stp");
  CHECK(frac.graph.edge_count() == 4);  // the parallel 1-2 edge keeps weight 1.5
  CHECK(frac.graph.edges()[0].w == 1.5);
  CHECK(frac.terminals == VertexSet{0, 1, 3});
  CHECK(dw_solve(frac.graph, frac.terminals).weight == 3);
}

TEST_CASE("writing is canonical and stable") {
  for (const char* name : {"hand_path.stp", "hand_star.stp", "hand_fractional.stp"}) {
    const Instance a = read_stp_file(kData + "/" + name);
    const std::string once = write_stp(a);
    const Instance b = parse_stp(once);
    CHECK(a == b);
    CHECK(write_stp(b) == once);
  }
  const Instance frac = read_stp_file(kData + "/hand_fractional.stp");
  CHECK(write_stp(frac).find("E 1 2 1.5\n") != std::string::npos);
  CHECK(write_stp(frac).find("E 2 3 2.25\n") != std::string::npos);
}

TEST_CASE("generated instances round-trip") {
  for (unsigned i = 0; i < 50; ++i) {
    Instance inst = generate(oracle::corpus_config(i)).instance;
    if (i % 2) inst.optimum = 7;
    const std::string text = write_stp(inst);
    CHECK(parse_stp(text) == inst);
    CHECK(write_stp(parse_stp(text)) == text);
  }
}

TEST_CASE("file helpers") {
  const auto dir = std::filesystem::temp_directory_path() / "qsteiner_stp_test";
  std::filesystem::create_directories(dir);
  const Instance inst = generate(oracle::corpus_config(1)).instance;
  write_stp_file((dir / "a.stp").string(), inst);
  CHECK(read_stp_file((dir / "a.stp").string()) == inst);
  CHECK_THROWS(read_stp_file((dir / "missing.stp").string()));
  std::filesystem::remove_all(dir);
}

TEST_CASE("format_weight") {
  CHECK(format_weight(3) == "3");
  CHECK(format_weight(2.5) == "2.5");
  CHECK(format_weight(0.1) == "0.1");
  CHECK(format_weight(1e20) == "1e+20");
  CHECK(std::stod(format_weight(1e20)) == 1e20);
  CHECK(std::stod(format_weight(1.0 / 3)) == 1.0 / 3);
}

TEST_CASE("parse errors carry positions") {
  CHECK(error_line("") == 1);
  CHECK(error_line("hello\n") == 1);
  CHECK(error_line(minimal("Nodes 2\nEdges 1\nE 1 1 3\n")) == 5);
  CHECK(error_line(minimal("Nodes 2\nEdges 1\nE 1 3 3\n")) == 5);
  CHECK(error_line(minimal("Nodes 2\nEdges 1\nE 1 2 0\n")) == 5);
  CHECK(error_line(minimal("Nodes 2\nEdges 1\nE 1 2 -4\n")) == 5);
  CHECK(error_line(minimal("Nodes 2\nEdges 1\nE 1 2 x\n")) == 5);
  CHECK(error_line(minimal("Nodes 2\nEdges 2\nE 1 2 1\n")) == 4);
  CHECK(error_line(minimal("Nodes 2\nEdges 1\nE 1 2 1\n", "Terminals 2\nT 1\nT 1\n")) > 0);
  CHECK(error_line(minimal("Nodes 2\nEdges 1\nE 1 2 1\n", "Terminals 2\nT 1\n")) > 0);
  CHECK(error_line(minimal("Nodes 2\nEdges 1\nE 1 2 1\nBogus 4\n")) == 6);

  const std::string no_eof =
      "33D32945\nSECTION Graph\nNodes 1\nEdges 0\nEND\nSECTION Terminals\nTerminals 0\nEND\n";
  CHECK(error_line(no_eof) > 0);
  const std::string no_graph = "33D32945\nSECTION Terminals\nTerminals 0\nEND\nEOF\n";
  CHECK(error_line(no_graph) > 0);
  const std::string unclosed = "33D32945\nSECTION Graph\nNodes 1\n";
  CHECK(error_line(unclosed) > 0);

  try {
    parse_stp(minimal("Nodes 2\nEdges 1\nE 1 2 zz\n"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 7);
  }
}

TEST_CASE("generator") {
  GeneratorConfig c;
  c.seed = 77;
  c.n = 9;
  c.k = 4;
  c.density = 0.3;
  const Generated a = generate(c);
  const Generated b = generate(c);
  CHECK(a.instance == b.instance);
  CHECK(a.retries == b.retries);
  CHECK(a.instance.name == "gen_n9_k4_s77");
  CHECK(a.instance.terminals.size() == 4);
  CHECK(connects(a.instance.graph, a.instance.terminals));
  for (const Edge& e : a.instance.graph.edges()) {
    CHECK(e.w >= 1);
    CHECK(e.w <= 10);
    CHECK(e.w == std::floor(e.w));
  }
  c.seed = 78;
  CHECK_FALSE(generate(c).instance == a.instance);

  c.k = 10;
  CHECK_THROWS_AS(generate(c), InvalidInput);
  c.k = 2;
  c.density = 1.5;
  CHECK_THROWS_AS(generate(c), InvalidInput);
  c.density = 0;
  c.max_retries = 3;
  CHECK_THROWS_AS(generate(c), InvalidInput);
}
