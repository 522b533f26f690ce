#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsteiner/split_solver.hpp"

namespace qsteiner {

/// Binary entropy in bits; H(0) = H(1) = 0.
double entropy(double alpha);

/// Exponent of the classical precomputation: H((1-b)/2^(l-1)) + (1-b)/2^(l-1).
double classical_exponent(double beta, unsigned levels);

/// Half the exponent of C(k,k/2) C(k/2,k/4) ... C(k/2^(l-1), b k/2^(l-1)), per k:
/// (1 - 1/2^(l-1)) + H(b)/2^l.
double quantum_exponent(double beta, unsigned levels);

/// The closed form as typeset for the quantum part: 1 - 1/2^(l-1) + H(b)/2^(l-1). It does not
/// agree with quantum_exponent and is kept only to annotate tables.
double printed_quantum_exponent(double beta, unsigned levels);

enum class Binding { kBalanced, kClassical, kQuantum };

std::string to_string(Binding b);

struct ExponentReport {
  double beta = 0;
  unsigned levels = 0;
  double classical = 0;
  double quantum = 0;
  double overall = 0;  // max(classical, quantum)
  double base = 0;     // 2^overall
  Binding binding = Binding::kBalanced;
};

ExponentReport exponent_report(double beta, unsigned levels);

/// Balances the two exponents over beta in (0, 1/2] by bisection to 1e-8. When they do not
/// cross, returns beta = 1/2 and names the side that dominates.
ExponentReport solve_beta(unsigned levels = 3);

struct Table2Row {
  ExponentReport report;
  double printed_quantum = 0;  // closed form as printed, at the same beta
  /// Smallest quantum exponent over beta in (0, 1/2] (approached as beta -> 0).
  double quantum_floor = 0;
  std::string note;
};

/// Rows for levels 1..max_levels.
std::vector<Table2Row> table2(unsigned max_levels = 4);

/// Terminal-subset count per search invocation at one level, for every core size that level can
/// see, plus the polynomial factors the solver multiplies in.
struct LevelPrediction {
  unsigned level = 0;
  SizeWindow window;
  struct Driver {
    unsigned core_size = 0;
    std::uint64_t driver = 0;  // sum over the window of C(core_size, s)
  };
  std::vector<Driver> drivers;
  std::uint64_t split_sets = 0;  // sum over i <= a_cap of C(n, i)
  unsigned max_extras = 0;       // extra vertices carried into this level, at most
};

/// Windowed binomial sums of the nested search on an uncontracted n-vertex graph with k
/// terminals. Contractions of a single vertex keep n vertices, so with a_cap <= 1 the
/// split-set factor holds on every level.
std::vector<LevelPrediction> predicted_search_sizes(std::size_t k, std::size_t n,
                                                    const SplitParams& params);

/// log2 of C(k,k/2) C(k/2,k/4) ... C(k/2^(l-1), floor(b k/2^(l-1))) with exact big integers.
double log2_binomial_product(std::size_t k, double beta, unsigned levels = 3);

/// Exact binomial coefficient as a decimal string (big integers).
std::string binomial_string(unsigned n, unsigned r);

struct StirlingPoint {
  std::size_t k = 0;
  double exponent = 0;  // log2_binomial_product / (2k)
  double error = 0;     // |exponent - quantum_exponent|
};

std::vector<StirlingPoint> stirling_convergence(double beta, unsigned levels,
                                                const std::vector<std::size_t>& ks);

}  // namespace qsteiner
