#include <catch2/catch_amalgamated.hpp>

#include "stillife/oracle.hpp"

using namespace stillife;

TEST_CASE("pattern enumeration pins the tiny boards", "[oracle]") {
  auto r1 = oracle::brute_force_sl(1);
  CHECK(r1.optimum == CostValue(1));  // only the empty board is stable
  CHECK(r1.count == SolutionCount(1));

  auto r2 = oracle::brute_force_sl(2);
  CHECK(r2.optimum == CostValue(0));  // the block fills the board
  CHECK(r2.count == SolutionCount(1));
  CHECK(r2.best.live_count() == 4);

  auto r3 = oracle::brute_force_sl(3);
  CHECK(r3.optimum == CostValue(3));  // six alive, e.g. the ship
  CHECK(is_stable(r3.best));
  CHECK(r3.best.live_count() == 6);

  CHECK_THROWS_AS(oracle::brute_force_sl(6), std::invalid_argument);
}

TEST_CASE("exhaustive WCSP search refuses oversized spaces", "[oracle]") {
  WcspInstance p;
  for (int i = 0; i < 25; ++i) p.add_variable(2);
  CHECK_THROWS_AS(oracle::brute_force_wcsp(p), std::length_error);
}

TEST_CASE("exhaustive WCSP search on a hand-checked instance", "[oracle]") {
  WcspInstance p;
  VariableId x = p.add_variable(2), y = p.add_variable(3);
  CostTable f({x, y}, {2, 3});
  // f(x,y) = |2x - y| has exactly two zeros, (0,0) and (1,2).
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto d = f.digits_of(i);
    int v = 2 * static_cast<int>(d[0]) - static_cast<int>(d[1]);
    f[i] = CostValue(static_cast<std::uint64_t>(v < 0 ? -v : v));
  }
  p.add_function(f);
  auto r = oracle::brute_force_wcsp(p);
  CHECK(r.optimum == CostValue(0));
  CHECK(r.count == SolutionCount(2));
  CHECK(r.assignment.at(x) == 0);  // first optimum in lexicographic order
  CHECK(r.assignment.at(y) == 0);
}

TEST_CASE("row DP agrees with full pattern enumeration", "[oracle]") {
  for (int n = 1; n <= 4; ++n) {
    auto brute = oracle::brute_force_sl(n);
    auto dp = oracle::sl_best_completion(n);
    INFO("n=" << n);
    REQUIRE(dp.optimum == brute.optimum);
    REQUIRE(dp.count == brute.count);
  }
}

TEST_CASE("row DP honors row filters", "[oracle]") {
  // Force every row empty: the empty board remains, n*n dead cells.
  auto empty = oracle::sl_best_completion(
      3, [](int, std::uint32_t v) { return v == 0; });
  CHECK(empty.optimum == CostValue(9));
  CHECK(empty.count == SolutionCount(1));

  // Clamp row 1 to the ship's top row; the ship orbit must survive.
  auto clamped = oracle::sl_best_completion(
      3, [](int row, std::uint32_t v) { return row != 1 || v == 0b011; });
  CHECK(clamped.optimum == CostValue(3));

  // An impossible clamp yields Top and zero count.
  auto blocked = oracle::sl_best_completion(
      3, [](int row, std::uint32_t v) { return row != 2 || v == 0b010; });
  CHECK(blocked.optimum.is_top());
  CHECK(blocked.count == SolutionCount(0));
}

TEST_CASE("suffix extension values chain back to the DP optimum", "[oracle]") {
  for (int n = 3; n <= 4; ++n) {
    std::uint32_t dom = 1u << n;
    CostValue best = CostValue::top();
    for (std::uint32_t a = 0; a < dom; ++a)
      for (std::uint32_t b = 0; b < dom; ++b) {
        CostValue c = oracle::row_cost_ref(1, 0, a, b, n);
        if (c.is_top()) continue;
        c += oracle::suffix_extension_ref(n, 3, a, b);
        best = std::min(best, c);
      }
    INFO("n=" << n);
    REQUIRE(best == oracle::sl_best_completion(n).optimum);
  }
}
