#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qsteiner/analysis.hpp"
#include "qsteiner/cli.hpp"
#include "qsteiner/dreyfus_wagner.hpp"
#include "qsteiner/split_solver.hpp"
#include "qsteiner/stp_io.hpp"

namespace py = pybind11;
using namespace qsteiner;

namespace {

Graph make_graph(std::size_t n, const std::vector<std::tuple<Vertex, Vertex, Weight>>& edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (const auto& [u, v, w] : edges) es.push_back(Edge{u, v, w});
  return Graph::build(n, es);
}

std::vector<std::tuple<Vertex, Vertex, Weight>> edge_tuples(std::span<const Edge> edges) {
  std::vector<std::tuple<Vertex, Vertex, Weight>> out;
  for (const Edge& e : edges) out.emplace_back(e.u, e.v, e.w);
  return out;
}

VertexSet to_set(const std::vector<Vertex>& v) { return VertexSet(v); }

std::vector<Vertex> from_set(const VertexSet& s) { return {s.begin(), s.end()}; }

py::dict ledger_dict(const QueryLedger& l) {
  py::list levels;
  for (const LevelRecord& r : l.levels()) {
    py::list shapes;
    for (const auto& [shape, count] : r.shapes) shapes.append(py::make_tuple(shape.driver, shape.poly, count));
    py::dict d;
    d["level"] = r.level;
    d["invocations"] = r.invocations;
    d["classical_evaluations"] = r.classical_evaluations;
    d["quantum_queries"] = r.quantum_queries;
    d["shapes"] = shapes;
    levels.append(d);
  }
  py::dict out;
  out["levels"] = levels;
  out["classical_evaluations"] = l.total_classical();
  out["quantum_queries"] = l.total_quantum();
  out["leaf_table_hits"] = l.leaf_table_hits;
  out["leaf_fallbacks"] = l.leaf_fallbacks;
  return out;
}

}  // namespace

PYBIND11_MODULE(_qsteiner, m) {
  m.doc() = "Exact Steiner tree solvers and the accounting of nested minimum finding";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<NoSteinerTree>(m, "NoSteinerTree", PyExc_RuntimeError);
  py::register_exception<GuardExceeded>(m, "GuardExceeded", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("edges"),
           "Undirected graph from (u, v, w) triples, 0-indexed")
      .def_property_readonly("n", &Graph::vertex_count)
      .def_property_readonly("edges", [](const Graph& g) { return edge_tuples(g.edges()); })
      .def("total_weight", &Graph::total_weight)
      .def(py::self == py::self)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.vertex_count()) + ", m=" + std::to_string(g.edge_count()) + ")";
      });

  py::class_<SteinerTree>(m, "SteinerTree")
      .def_property_readonly("edges", [](const SteinerTree& t) { return edge_tuples(t.edges); })
      .def_readonly("weight", &SteinerTree::weight)
      .def("vertices", [](const SteinerTree& t) { return from_set(t.vertices()); });

  py::class_<Instance>(m, "Instance")
      .def(py::init([](std::string name, Graph g, const std::vector<Vertex>& terminals,
                       std::optional<Weight> optimum) {
             return Instance{std::move(name), std::move(g), to_set(terminals), optimum};
           }),
           py::arg("name"), py::arg("graph"), py::arg("terminals"), py::arg("optimum") = py::none())
      .def_readwrite("name", &Instance::name)
      .def_readwrite("graph", &Instance::graph)
      .def_property(
          "terminals", [](const Instance& i) { return from_set(i.terminals); },
          [](Instance& i, const std::vector<Vertex>& t) { i.terminals = to_set(t); })
      .def_readwrite("optimum", &Instance::optimum)
      .def(py::self == py::self);

  py::class_<SplitParams>(m, "SplitParams")
      .def(py::init<>())
      .def_readwrite("levels", &SplitParams::levels)
      .def_readwrite("alphas", &SplitParams::alphas)
      .def_readwrite("beta", &SplitParams::beta)
      .def_readwrite("epsilon", &SplitParams::epsilon)
      .def_readwrite("a_cap", &SplitParams::a_cap)
      .def_readwrite("dh_constant", &SplitParams::dh_constant)
      .def_readwrite("memoize", &SplitParams::memoize)
      .def_readwrite("max_widenings", &SplitParams::max_widenings)
      .def("validate", &SplitParams::validate);

  py::class_<HybridResult>(m, "HybridResult")
      .def_readonly("tree", &HybridResult::tree)
      .def_readonly("value", &HybridResult::value)
      .def_readonly("params", &HybridResult::params)
      .def_readonly("slack", &HybridResult::slack)
      .def_property_readonly("ledger", [](const HybridResult& r) { return ledger_dict(r.ledger); })
      .def_property_readonly("widenings", [](const HybridResult& r) {
        py::list out;
        for (const Widening& w : r.widenings) out.append(py::make_tuple(w.slack, w.a_cap, w.reason));
        return out;
      });

  m.def("dw_solve", [](const Graph& g, const std::vector<Vertex>& k) { return dw_solve(g, to_set(k)); },
        py::arg("graph"), py::arg("terminals"));
  m.def("brute_force_steiner",
        [](const Graph& g, const std::vector<Vertex>& k) { return brute_force_steiner(g, to_set(k)); },
        py::arg("graph"), py::arg("terminals"));
  m.def(
      "hybrid_solve",
      [](const Graph& g, const std::vector<Vertex>& k, const SplitParams& p) {
        py::gil_scoped_release release;
        return hybrid_solve(g, to_set(k), p);
      },
      py::arg("graph"), py::arg("terminals"), py::arg("params") = SplitParams{});

  m.def("parse_stp", [](const std::string& text) { return parse_stp(text); }, py::arg("text"));
  m.def("write_stp", &write_stp, py::arg("instance"));
  m.def(
      "generate",
      [](std::uint64_t seed, std::size_t n, std::size_t k, double density, unsigned max_weight) {
        GeneratorConfig c;
        c.seed = seed;
        c.n = n;
        c.k = k;
        c.density = density;
        c.max_weight = max_weight;
        return generate(c).instance;
      },
      py::arg("seed"), py::arg("n"), py::arg("k"), py::arg("density") = 0.3, py::arg("max_weight") = 10);

  m.def("solve_beta", [](unsigned levels) {
    const ExponentReport r = solve_beta(levels);
    py::dict d;
    d["beta"] = r.beta;
    d["classical"] = r.classical;
    d["quantum"] = r.quantum;
    d["base"] = r.base;
    d["binding"] = to_string(r.binding);
    return d;
  }, py::arg("levels") = 3);
  m.def("classical_exponent", &classical_exponent, py::arg("beta"), py::arg("levels") = 3);
  m.def("quantum_exponent", &quantum_exponent, py::arg("beta"), py::arg("levels") = 3);
  m.def("predicted_level_sizes", [](std::size_t k, std::size_t n, const SplitParams& p) {
    py::list out;
    for (const LevelPrediction& l : predicted_search_sizes(k, n, p)) {
      py::list drivers;
      for (const auto& d : l.drivers) drivers.append(py::make_tuple(d.core_size, d.driver));
      py::dict row;
      row["level"] = l.level;
      row["window"] = py::make_tuple(l.window.lo, l.window.hi);
      row["drivers"] = drivers;
      row["split_sets"] = l.split_sets;
      row["max_extras"] = l.max_extras;
      out.append(row);
    }
    return out;
  }, py::arg("k"), py::arg("n"), py::arg("params") = SplitParams{});

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
