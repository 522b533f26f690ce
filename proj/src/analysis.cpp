#include "qsteiner/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace qsteiner {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void check_range(double beta, unsigned levels) {
  if (!(beta > 0.0 && beta <= 0.5)) throw InvalidInput("beta must lie in (0, 1/2]");
  if (levels == 0) throw InvalidInput("levels must be at least 1");
}

double pow2(int e) { return std::ldexp(1.0, e); }

BigInt big_binomial(unsigned n, unsigned r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  BigInt c = 1;
  for (unsigned i = 1; i <= r; ++i) {
    c *= n - r + i;
    c /= i;
  }
  return c;
}

double log2_big(const BigInt& x) {
  if (x <= 0) throw InvalidInput("log2 of a non-positive integer");
  const auto msb = static_cast<long>(boost::multiprecision::msb(x));
  // Keep the top 53 bits for the mantissa.
  const long shift = std::max(0L, msb - 52);
  const double top = static_cast<double>(static_cast<BigInt>(x >> shift));
  return std::log2(top) + static_cast<double>(shift);
}

std::uint64_t binomial(unsigned n, unsigned r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t c = 1;
  for (unsigned i = 1; i <= r; ++i) c = c * (n - r + i) / i;
  return c;
}

}  // namespace

double entropy(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidInput("entropy argument must lie in [0, 1]");
  if (alpha == 0.0 || alpha == 1.0) return 0.0;
  return -alpha * std::log2(alpha) - (1.0 - alpha) * std::log2(1.0 - alpha);
}

double classical_exponent(double beta, unsigned levels) {
  check_range(beta, levels);
  const double f = (1.0 - beta) / pow2(static_cast<int>(levels) - 1);
  return entropy(f) + f;
}

double quantum_exponent(double beta, unsigned levels) {
  check_range(beta, levels);
  return (1.0 - 1.0 / pow2(static_cast<int>(levels) - 1)) +
         entropy(beta) / pow2(static_cast<int>(levels));
}

double printed_quantum_exponent(double beta, unsigned levels) {
  check_range(beta, levels);
  const double scale = pow2(static_cast<int>(levels) - 1);
  return 1.0 - 1.0 / scale + entropy(beta) / scale;
}

std::string to_string(Binding b) {
  switch (b) {
    case Binding::kBalanced:
      return "balanced";
    case Binding::kClassical:
      return "classical";
    case Binding::kQuantum:
      return "quantum";
  }
  return "unknown";
}

ExponentReport exponent_report(double beta, unsigned levels) {
  ExponentReport r;
  r.beta = beta;
  r.levels = levels;
  r.classical = classical_exponent(beta, levels);
  r.quantum = quantum_exponent(beta, levels);
  r.overall = std::max(r.classical, r.quantum);
  r.base = std::exp2(r.overall);
  r.binding = r.classical > r.quantum ? Binding::kClassical
              : r.quantum > r.classical ? Binding::kQuantum
                                        : Binding::kBalanced;
  return r;
}

ExponentReport solve_beta(unsigned levels) {
  if (levels == 0) throw InvalidInput("levels must be at least 1");
  auto gap = [&](double b) { return classical_exponent(b, levels) - quantum_exponent(b, levels); };
  // classical falls and quantum rises with beta, so the gap is decreasing.
  double lo = 1e-12;
  double hi = 0.5;
  if (gap(hi) >= 0.0 || gap(lo) <= 0.0) {
    ExponentReport r = exponent_report(0.5, levels);
    if (gap(hi) == 0.0) r.binding = Binding::kBalanced;
    return r;
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  ExponentReport r = exponent_report(0.5 * (lo + hi), levels);
  r.binding = Binding::kBalanced;
  return r;
}

std::vector<Table2Row> table2(unsigned max_levels) {
  std::vector<Table2Row> rows;
  for (unsigned l = 1; l <= max_levels; ++l) {
    Table2Row row;
    row.report = solve_beta(l);
    row.printed_quantum = printed_quantum_exponent(row.report.beta, l);
    row.quantum_floor = 1.0 - 1.0 / pow2(static_cast<int>(l) - 1);
    if (std::abs(row.printed_quantum - row.report.quantum) > 1e-9) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "printed closed form gives %.4f; square root of the binomial product gives %.4f",
                    row.printed_quantum, row.report.quantum);
      row.note = buf;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<LevelPrediction> predicted_search_sizes(std::size_t k, std::size_t n,
                                                    const SplitParams& params) {
  params.validate();
  std::vector<LevelPrediction> out;
  std::set<unsigned> cores{static_cast<unsigned>(k)};
  unsigned extras = 0;
  std::uint64_t split_sets = 0;
  for (unsigned i = 0; i <= params.a_cap && i <= n; ++i) {
    split_sets += binomial(static_cast<unsigned>(n), i);
  }
  for (unsigned level = 1; level <= params.levels; ++level) {
    LevelPrediction p;
    p.level = level;
    p.window = level_window(params, level, k);
    p.split_sets = split_sets;
    p.max_extras = extras;
    std::set<unsigned> next;
    for (unsigned c : cores) {
      std::uint64_t driver = 0;
      for (unsigned s = p.window.lo; s <= std::min(p.window.hi, c); ++s) {
        driver += binomial(c, s);
        next.insert(s);
        next.insert(c - s);
      }
      p.drivers.push_back({c, driver});
    }
    out.push_back(std::move(p));
    cores = std::move(next);
    extras += std::max(params.a_cap, 1u);
  }
  return out;
}

double log2_binomial_product(std::size_t k, double beta, unsigned levels) {
  check_range(beta, levels);
  BigInt product = 1;
  auto size = static_cast<unsigned>(k);
  for (unsigned level = 1; level < levels; ++level) {
    product *= big_binomial(size, size / 2);
    size /= 2;
  }
  product *= big_binomial(size, static_cast<unsigned>(std::floor(beta * size + 1e-9)));
  return log2_big(product);
}

std::string binomial_string(unsigned n, unsigned r) { return big_binomial(n, r).str(); }

std::vector<StirlingPoint> stirling_convergence(double beta, unsigned levels,
                                                const std::vector<std::size_t>& ks) {
  const double limit = quantum_exponent(beta, levels);
  std::vector<StirlingPoint> out;
  for (std::size_t k : ks) {
    StirlingPoint p;
    p.k = k;
    p.exponent = log2_binomial_product(k, beta, levels) / (2.0 * static_cast<double>(k));
    p.error = std::abs(p.exponent - limit);
    out.push_back(p);
  }
  return out;
}

}  // namespace qsteiner
