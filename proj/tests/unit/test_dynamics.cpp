#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cckp/dynamics.hpp"

using namespace cckp;

namespace {

// Independent replay of the schedule stream: 64-bit Mersenne Twister plus the
// multiply-high bounded draw with rejection.
std::int64_t replay_step(std::mt19937_64& gen, std::int64_t magnitude) {
  const std::uint64_t span = static_cast<std::uint64_t>(2 * magnitude + 1);
  const std::uint64_t reject_below = (~span + 1) % span;
  for (;;) {
    const unsigned __int128 product = static_cast<unsigned __int128>(gen()) * span;
    if (static_cast<std::uint64_t>(product) >= reject_below)
      return static_cast<std::int64_t>(product >> 64) - magnitude;
  }
}

}  // namespace

TEST(Schedule, ConstantBeforeFirstChange) {
  const BoundSchedule s(1000, 10, 5, 42);
  for (std::int64_t t = 0; t < 10; ++t) EXPECT_EQ(s.bound_at(t), 1000);
}

TEST(Schedule, ZeroMagnitudeIsConstant) {
  const BoundSchedule s(700, 3, 0, 9);
  for (std::int64_t t = 0; t < 100; ++t) EXPECT_EQ(s.bound_at(t), 700);
}

TEST(Schedule, MatchesIndependentReplay) {
  const BoundSchedule s(1000, 10, 5, 42);
  std::mt19937_64 gen(42);
  std::int64_t bound = 1000;
  for (std::int64_t k = 1; k <= 200; ++k) {
    bound = std::max<std::int64_t>(1, bound + replay_step(gen, 5));
    EXPECT_EQ(s.bound_at(10 * k), bound);
    EXPECT_EQ(s.bound_at(10 * k + 9), bound);
  }
}

TEST(Schedule, ChangeCount) {
  const BoundSchedule s(5000, 1000, 500, 1);
  EXPECT_EQ(s.changes_in(50000).size(), 50U);
  EXPECT_TRUE(s.changes_in(999).empty());
  for (const BoundChange& c : s.changes_in(50000)) {
    EXPECT_EQ(c.t % 1000, 0);
    EXPECT_EQ(s.bound_at(c.t), c.bound);
    EXPECT_EQ(s.bound_at(c.t - 1), s.bound_at(c.t - 1000));
  }
}

TEST(Schedule, StepsBoundedAndFloored) {
  const BoundSchedule s(10, 1, 50, 3, 4);
  const auto e = s.epochs(2000);
  for (std::size_t k = 1; k < e.size(); ++k) {
    EXPECT_GE(e[k], 4);
    EXPECT_LE(std::abs(e[k] - e[k - 1]), 50);
  }
}

TEST(Schedule, Validation) {
  EXPECT_THROW(BoundSchedule(100, 0, 5, 1), std::invalid_argument);
  EXPECT_THROW(BoundSchedule(100, 10, -1, 1), std::invalid_argument);
  EXPECT_THROW(BoundSchedule(0, 10, 5, 1), std::invalid_argument);
  EXPECT_THROW(BoundSchedule(5, 10, 5, 1, 6), std::invalid_argument);
}

TEST(Schedule, CsvListsChanges) {
  const BoundSchedule s(100, 10, 5, 7);
  std::ostringstream out;
  write_schedule_csv(out, s, 35);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,bound");
  std::getline(in, line);
  EXPECT_EQ(line, "0,100");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}
