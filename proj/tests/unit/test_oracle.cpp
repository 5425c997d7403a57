#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "cckp/errors.hpp"
#include "cckp/oracle.hpp"
#include "test_support.hpp"

using namespace cckp;

namespace {

std::int64_t enumerate_optimum(const KnapsackInstance& inst, std::int64_t cap) {
  std::int64_t best = 0;
  for (std::uint64_t m = 0; m < (1ULL << inst.size()); ++m) {
    std::int64_t w = 0, p = 0;
    for (std::size_t i = 0; i < inst.size(); ++i)
      if ((m >> i) & 1U) {
        w += inst.weight(i);
        p += inst.profit(i);
      }
    if (w <= cap) best = std::max(best, p);
  }
  return best;
}

std::int64_t greedy(const KnapsackInstance& inst, std::int64_t cap) {
  std::vector<std::size_t> order(inst.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return inst.profit(a) * inst.weight(b) > inst.profit(b) * inst.weight(a);
  });
  std::int64_t w = 0, p = 0;
  for (std::size_t i : order)
    if (w + inst.weight(i) <= cap) {
      w += inst.weight(i);
      p += inst.profit(i);
    }
  return p;
}

}  // namespace

TEST(Oracle, HandExample) {
  const auto inst = support::make_instance({3, 4}, {10, 7}, 5);
  EXPECT_EQ(deterministic_optimum(inst, 5), 10);
  EXPECT_EQ(deterministic_optimum(inst, 0), 0);
  EXPECT_EQ(deterministic_optimum(inst, 7), 17);
  EXPECT_EQ(deterministic_optimum(inst, 1000000), 17);
}

TEST(Oracle, MatchesEnumerationAndBeatsGreedy) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto inst = support::random_instance(16, seed);
    const OptimumTable table(inst, inst.total_weight());
    std::int64_t prev = 0;
    for (std::int64_t cap = 0; cap <= inst.total_weight(); cap += 7) {
      EXPECT_EQ(table.at(cap), enumerate_optimum(inst, cap));
      EXPECT_GE(table.at(cap), greedy(inst, cap));
      EXPECT_GE(table.at(cap), prev);
      prev = table.at(cap);
    }
  }
}

TEST(Oracle, OptimumForBoundsDeduplicates) {
  const auto inst = support::random_instance(30, 2);
  const std::vector<std::int64_t> bounds{50, 0, 50, 400, 50};
  const auto m = optimum_for_bounds(inst, bounds);
  EXPECT_EQ(m.size(), 3U);
  for (const auto& [cap, v] : m) EXPECT_EQ(v, deterministic_optimum(inst, cap));
}

TEST(Oracle, TableCoverageAndExtension) {
  const auto inst = support::random_instance(30, 4);
  OptimumTable t(inst, 100);
  EXPECT_TRUE(t.covers(100));
  EXPECT_FALSE(t.covers(101));
  EXPECT_THROW(t.at(101), std::out_of_range);
  t.extend_to(300);
  EXPECT_EQ(t.at(300), deterministic_optimum(inst, 300));
  EXPECT_THROW(OptimumTable(inst, 1000, 10), ResourceError);
}

TEST(Oracle, BruteForceBest) {
  const auto inst = support::random_instance(12, 3, 100, 0.0);
  const std::int64_t b = inst.base_capacity();
  EXPECT_DOUBLE_EQ(brute_force_best(inst, b, 0.1, Estimator::Cheb),
                   static_cast<double>(deterministic_optimum(inst, b)));
  EXPECT_DOUBLE_EQ(brute_force_best(inst.with_dispersion(20), 0, 0.1, Estimator::Hoef), 0.0);
  const auto noisy = inst.with_dispersion(20);
  EXPECT_LE(brute_force_best(noisy, b, 0.1, Estimator::Cheb),
            static_cast<double>(deterministic_optimum(inst, b)));
}

TEST(Oracle, ParetoSingleItem) {
  const auto inst = support::make_instance({3}, {10}, 2, 3);
  const auto front = brute_force_pareto(inst, FitnessFormulation(FormulationKind::Static2D), 5);
  // Both selections are feasible at B=5: (10, 3) and (0, 0) are incomparable.
  ASSERT_EQ(front.size(), 2U);
  EXPECT_EQ(front[0], ObjectiveVector(10, 3));
  EXPECT_EQ(front[1], ObjectiveVector(0, 0));
  const auto tight = brute_force_pareto(inst, FitnessFormulation(FormulationKind::Static2D), 2);
  ASSERT_EQ(tight.size(), 1U);
  EXPECT_EQ(tight[0], ObjectiveVector(0, 0));
}

TEST(Oracle, Static2DFrontOnePointPerCardinality) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto inst = support::random_instance(14, seed, 100, 5);
    const auto front = brute_force_pareto(inst, FitnessFormulation(FormulationKind::Static2D),
                                          inst.base_capacity());
    EXPECT_LE(front.size(), inst.size() + 1);
    std::set<double> variances;
    for (const auto& f : front) EXPECT_TRUE(variances.insert(f.variance()).second);
    for (std::size_t i = 0; i < front.size(); ++i)
      for (std::size_t j = 0; j < front.size(); ++j)
        if (i != j) EXPECT_FALSE(dominates_weak(front[i], front[j]));
  }
}

TEST(Oracle, SizeCaps) {
  const auto big = support::random_instance(25, 1);
  EXPECT_THROW(brute_force_best(big, 10, 0.1, Estimator::Cheb), ResourceError);
  const auto mid = support::random_instance(21, 1);
  EXPECT_THROW(brute_force_pareto(mid, FitnessFormulation(FormulationKind::Static2D), 10),
               ResourceError);
}
