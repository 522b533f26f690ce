#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qsteiner/analysis.hpp"

using namespace qsteiner;

TEST_CASE("binary entropy") {
  CHECK(entropy(0) == 0);
  CHECK(entropy(1) == 0);
  CHECK(entropy(0.5) == doctest::Approx(1.0));
  CHECK(entropy(0.25) == doctest::Approx(0.811278).epsilon(1e-6));
  CHECK(entropy(0.3) == doctest::Approx(entropy(0.7)));
}

TEST_CASE("exponents at known points") {
  CHECK(classical_exponent(0.5, 1) == doctest::Approx(1.5));
  CHECK(quantum_exponent(0.5, 1) == doctest::Approx(0.5));
  CHECK(quantum_exponent(0.5, 2) == doctest::Approx(0.75));
  // ((1-b)/4, then H + linear term)
  const double x = (1 - 0.3) / 4;
  CHECK(classical_exponent(0.3, 3) == doctest::Approx(entropy(x) + x));
  CHECK(quantum_exponent(0.3, 3) == doctest::Approx(0.75 + entropy(0.3) / 8));
  CHECK(printed_quantum_exponent(0.3, 3) == doctest::Approx(0.75 + entropy(0.3) / 4));
}

TEST_CASE("three-level balance point") {
  const ExponentReport r = solve_beta(3);
  CHECK(r.beta == doctest::Approx(0.28325).epsilon(1e-4 / 0.28325));
  CHECK(r.classical == doctest::Approx(r.quantum).epsilon(1e-8));
  CHECK(r.overall == doctest::Approx(0.8574).epsilon(1e-3));
  CHECK(r.base == doctest::Approx(1.8118).epsilon(1e-3));
  CHECK(r.binding == Binding::kBalanced);
  CHECK_THROWS_AS(solve_beta(0), InvalidInput);
}

TEST_CASE("level table") {
  const auto rows = table2(4);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].report.classical == doctest::Approx(1.5));
  CHECK(rows[0].report.quantum == doctest::Approx(0.5));
  CHECK(rows[0].report.binding == Binding::kClassical);
  CHECK(rows[1].report.classical == doctest::Approx(1.0613).epsilon(1e-3));
  CHECK(rows[1].report.quantum == doctest::Approx(0.75));
  CHECK(rows[1].printed_quantum == doctest::Approx(1.0));
  CHECK_FALSE(rows[1].note.empty());
  CHECK(rows[2].report.quantum == doctest::Approx(0.8574).epsilon(1e-3));
  CHECK(rows[3].report.binding == Binding::kQuantum);
  CHECK(rows[3].report.quantum >= 0.875);
  CHECK(rows[3].quantum_floor == doctest::Approx(0.875));
  CHECK(to_string(Binding::kQuantum) == "quantum");
}

TEST_CASE("binomial strings are exact") {
  CHECK(binomial_string(10, 3) == "120");
  CHECK(binomial_string(5, 7) == "0");
  CHECK(binomial_string(100, 50) == "100891344545564193334812497256");
  for (unsigned n = 0; n <= 40; n += 5) {
    for (unsigned r = 0; r <= n; ++r) CHECK(binomial_string(n, r) == std::to_string(oracle::binomial(n, r)));
  }
}

TEST_CASE("log2 of the binomial product") {
  const double expected = std::log2(double(oracle::binomial(16, 8))) + std::log2(double(oracle::binomial(8, 4))) +
                          std::log2(double(oracle::binomial(4, 1)));
  CHECK(log2_binomial_product(16, 0.28325, 3) == doctest::Approx(expected));
  const auto pts = stirling_convergence(0.28325, 3, {16, 32, 64, 128, 256});
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].error < pts[i - 1].error);
  CHECK(pts[3].error < 0.1);
}

TEST_CASE("predicted search sizes") {
  SplitParams p;
  p.epsilon = 1e-4;
  p.a_cap = 1;
  const auto pred = predicted_search_sizes(16, 18, p);
  REQUIRE(pred.size() == 3);
  CHECK(pred[0].window == SizeWindow{8, 8});
  CHECK(pred[0].drivers.size() == 1);
  CHECK(pred[0].drivers[0].driver == oracle::binomial(16, 8));
  CHECK(pred[0].split_sets == 19);
  CHECK(pred[1].drivers[0].core_size == 8);
  CHECK(pred[1].drivers[0].driver == oracle::binomial(8, 4));
  CHECK(pred[2].drivers[0].driver == oracle::binomial(4, 1));
  CHECK(pred[2].max_extras == 2);
}
