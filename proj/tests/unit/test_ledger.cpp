#include <cmath>

#include "doctest.h"
#include "qsteiner/ledger.hpp"

using namespace qsteiner;

TEST_CASE("ceil_sqrt is exact around perfect squares") {
  CHECK(ceil_sqrt(0) == 0);
  CHECK(ceil_sqrt(1) == 1);
  CHECK(ceil_sqrt(2) == 2);
  CHECK(ceil_sqrt(4) == 2);
  CHECK(ceil_sqrt(5) == 3);
  for (std::uint64_t r = 2; r < 3000; r += 7) {
    CHECK(ceil_sqrt(r * r) == r);
    CHECK(ceil_sqrt(r * r + 1) == r + 1);
    CHECK(ceil_sqrt(r * r - 1) == r);
  }
  const std::uint64_t big = 4294967295ULL;  // 2^32 - 1
  CHECK(ceil_sqrt(big * big) == big);
  CHECK(ceil_sqrt(big * big + 1) == big + 1);
  CHECK(ceil_sqrt(~std::uint64_t{0}) == big + 1);
}

TEST_CASE("record accumulates N and ceil(sqrt N)") {
  QueryLedger l;
  l.record(1, SearchShape{10, 3});
  l.record(1, SearchShape{10, 3}, 2);
  l.record(2, SearchShape{4, 1});
  l.record(3, SearchShape{4, 1}, 0);
  REQUIRE(l.level(1) != nullptr);
  CHECK(l.level(1)->invocations == 3);
  CHECK(l.level(1)->classical_evaluations == 90);
  CHECK(l.level(1)->quantum_queries == 3 * 6);
  CHECK(l.level(1)->shapes.at(SearchShape{10, 3}) == 3);
  CHECK(l.level(2)->quantum_queries == 2);
  CHECK(l.level(3) == nullptr);
  CHECK(l.total_classical() == 94);
  CHECK(l.total_quantum() == 20);
  CHECK(l.total_invocations() == 4);
}

TEST_CASE("levels stay sorted and merge adds") {
  QueryLedger a;
  a.record(3, SearchShape{2, 1});
  a.record(1, SearchShape{2, 1});
  CHECK(a.levels()[0].level == 1);
  CHECK(a.levels()[1].level == 3);
  QueryLedger b;
  b.record(2, SearchShape{9, 1});
  b.leaf_table_hits = 5;
  a.merge(b);
  CHECK(a.levels().size() == 3);
  CHECK(a.leaf_table_hits == 5);
  CHECK_THROWS_AS(a.merge(QueryLedger(2.0)), InvalidInput);
}

TEST_CASE("dh constant scales queries") {
  QueryLedger l(2.5);
  CHECK(l.modeled_queries(16) == 10);
  CHECK(l.modeled_queries(17) == static_cast<std::uint64_t>(std::ceil(2.5 * std::sqrt(17.0))));
  CHECK_THROWS_AS(QueryLedger(0.0), InvalidInput);
}

TEST_CASE("dh_min returns the smallest key among ties and records one invocation") {
  const std::vector<int> domain{5, 3, 9, 1, 7};
  QueryLedger l;
  const auto r = dh_min<int>(domain, [](int x) { return x == 1 || x == 3 ? 0.0 : 1.0; }, l, 2);
  CHECK(r.argmin == 1);
  CHECK(r.value == 0.0);
  CHECK(r.index == 3);
  CHECK(l.level(2)->classical_evaluations == 5);
  CHECK(l.level(2)->quantum_queries == 3);
  const std::vector<int> empty;
  CHECK_THROWS_AS(dh_min<int>(empty, [](int) { return 0.0; }, l, 1), InvalidInput);
}
