#include <gtest/gtest.h>

#include <random>

#include "cckp/solution.hpp"
#include "test_support.hpp"

using namespace cckp;

TEST(Solution, EmptyHasZeroCaches) {
  const auto inst = support::random_instance(70, 1);
  const Solution x(inst.size());
  EXPECT_EQ(x.weight(), 0);
  EXPECT_EQ(x.expectation(), 0);
  EXPECT_EQ(x.cardinality(), 0U);
  EXPECT_TRUE(x.caches_consistent(inst));
}

TEST(Solution, FlipKeepsCachesExact) {
  const auto inst = support::random_instance(130, 2);
  std::mt19937_64 gen(5);
  Solution x(inst.size());
  for (int k = 0; k < 2000; ++k) {
    x.flip(gen() % inst.size(), inst);
    ASSERT_TRUE(x.caches_consistent(inst));
  }
  std::int64_t w = 0, mu = 0;
  std::size_t c = 0;
  for (std::size_t i = 0; i < inst.size(); ++i)
    if (x.test(i)) {
      w += inst.weight(i);
      mu += inst.profit(i);
      ++c;
    }
  EXPECT_EQ(x.weight(), w);
  EXPECT_EQ(x.expectation(), mu);
  EXPECT_EQ(x.cardinality(), c);
}

TEST(Solution, HexAndBitstringRoundTrip) {
  const auto inst = support::random_instance(13, 3);
  const Solution x = support::solution_from_mask(inst, 0b1000000000011);
  EXPECT_EQ(x.to_bitstring(), "1100000000001");
  EXPECT_EQ(x.to_hex(), "c008");
  EXPECT_EQ(Solution::from_hex(inst, x.to_hex()), x);
  std::mt19937_64 gen(1);
  for (int k = 0; k < 50; ++k) {
    const Solution y = support::random_solution(inst, gen);
    EXPECT_EQ(Solution::from_hex(inst, y.to_hex()), y);
  }
  EXPECT_THROW(Solution::from_hex(inst, "zz"), std::invalid_argument);
}

TEST(Solution, OrderingIsLexicographic) {
  const auto inst = support::random_instance(5, 3);
  const Solution a = support::solution_from_mask(inst, 0b00001);  // 10000
  const Solution b = support::solution_from_mask(inst, 0b00010);  // 01000
  EXPECT_LT(b, a);
  EXPECT_EQ(a, support::solution_from_mask(inst, 1));
  EXPECT_EQ(SolutionHash{}(a), SolutionHash{}(support::solution_from_mask(inst, 1)));
}
