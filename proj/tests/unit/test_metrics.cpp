#include <gtest/gtest.h>

#include <sstream>

#include "cckp/errors.hpp"
#include "cckp/metrics.hpp"
#include "cckp/oracle.hpp"
#include "test_support.hpp"

using namespace cckp;

namespace {

RunTrace synthetic(std::vector<double> errors, double alpha = 0.1) {
  RunTrace t;
  std::int64_t step = 1;
  for (double e : errors) t.rows.push_back({step++, 100, alpha, Estimator::Cheb, 50 - e, e, 3, 0});
  return t;
}

LabeledTrace labeled(double final_best, int repeat, std::string inst = "i") {
  RunLabel l{std::move(inst), Selection::Uniform, 3, false, 0, 0, 25, repeat};
  RunTrace t;
  t.rows.push_back({1, 100, 0.1, Estimator::Cheb, 0, 100, 1, 0});
  t.rows.push_back({2, 100, 0.1, Estimator::Cheb, final_best, 100 - final_best, 1, 0});
  return {l, t};
}

}  // namespace

TEST(Metrics, OfflineErrorOfEmptyPopulationIsOptimum) {
  const auto inst = support::random_instance(10, 1, 100, 10);
  Archive a(2);
  a.insert(Solution(10), ObjectiveVector(0, 0));
  EXPECT_DOUBLE_EQ(offline_error(a, inst.base_capacity(), 321, inst, 0.1, Estimator::Cheb), 321.0);
  Archive none(2);
  EXPECT_DOUBLE_EQ(offline_error(none, inst.base_capacity(), 5, inst, 0.1, Estimator::Hoef), 5.0);
}

TEST(Metrics, OfflineErrorZeroAtOptimumWithoutNoise) {
  const auto inst = support::make_instance({3, 4, 5}, {10, 7, 9}, 8, 0.0);
  const std::int64_t opt = deterministic_optimum(inst, 8);
  Archive a(2);
  const Solution x = support::solution_from_mask(inst, 0b101);  // w 8, mu 19
  ASSERT_EQ(x.expectation(), opt);
  a.insert(x, ObjectiveVector(19, 0));
  EXPECT_DOUBLE_EQ(offline_error(a, 8, opt, inst, 0.1, Estimator::Cheb), 0.0);
}

TEST(Metrics, AverageOfflineError) {
  EXPECT_DOUBLE_EQ(average_offline_error(synthetic({3, 2, 1}), 0.1, Estimator::Cheb), 2.0);
  EXPECT_DOUBLE_EQ(average_offline_error(synthetic({4, 4, 4, 4}), 0.1, Estimator::Cheb), 4.0);
  EXPECT_DOUBLE_EQ(average_offline_error(synthetic({7}), 0.1, Estimator::Cheb), 7.0);
  EXPECT_THROW(average_offline_error(synthetic({7}), 0.01, Estimator::Cheb), std::invalid_argument);
}

TEST(Metrics, TraceCsvRoundTrip) {
  RunTrace t = synthetic({3.25, 2.0, 1.0 / 3.0});
  t.rows.push_back({9, 7, 0.0001, Estimator::Hoef, -0.0, 12, 4, 5});
  std::ostringstream out;
  write_trace_csv(out, t);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "t,bound,alpha,estimator,best_profit,offline_error,archive_s1,archive_s2");
  EXPECT_NE(out.str().find("9,7,0.000100000,hoef,0.000000000,12.000000000,4,5"), std::string::npos);
  std::istringstream in(out.str());
  const RunTrace back = read_trace_csv(in);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  EXPECT_NEAR(back.rows[2].offline_error, 1.0 / 3.0, 1e-9);
  std::ostringstream again;
  write_trace_csv(again, back);
  EXPECT_EQ(again.str(), out.str());
  std::istringstream bad("t,bound\n1,2\n");
  EXPECT_THROW(read_trace_csv(bad), ParseError);
}

TEST(Metrics, RecorderSamplesAndIsNonNegative) {
  const auto inst = support::random_instance(20, 4, 100, 10);
  const OptimumTable table(inst, inst.base_capacity());
  TraceRecorder rec(inst, table, {0.1, 0.001}, 100, 1050);
  Observer* obs[] = {&rec};
  EvolverConfig c;
  c.t_max = 1050;
  c.formulation = FitnessFormulation(FormulationKind::Static2D);
  c.seed = 2;
  run_gsemo(inst, c, obs);
  const auto col = rec.trace().column(0.1, Estimator::Cheb);
  ASSERT_EQ(col.size(), 12U);  // 1, 100..1000, 1050
  EXPECT_EQ(col.front().t, 1);
  EXPECT_EQ(col.back().t, 1050);
  EXPECT_EQ(rec.trace().rows.size(), 48U);
  for (const TraceRow& r : rec.trace().rows) EXPECT_GE(r.offline_error, 0.0);
  // Static best estimates never decrease.
  for (std::size_t i = 1; i < col.size(); ++i) EXPECT_GE(col[i].best_profit, col[i - 1].best_profit);
  // Stricter alpha, larger error.
  const auto strict = rec.trace().column(0.001, Estimator::Cheb);
  for (std::size_t i = 0; i < col.size(); ++i) EXPECT_GE(strict[i].offline_error, col[i].offline_error);
  EXPECT_THROW(TraceRecorder(inst, table, {0.6}, 10, 100), ConfigError);
  EXPECT_THROW(TraceRecorder(inst, table, {0.1}, 0, 100), ConfigError);
}

TEST(Metrics, AggregateMeansAndStd) {
  const auto rows = aggregate({labeled(90, 0), labeled(110, 1)});
  ASSERT_EQ(rows.size(), 1U);
  EXPECT_DOUBLE_EQ(rows[0].mean_final_best, 100.0);
  EXPECT_NEAR(rows[0].std_final_best, std::sqrt(200.0), 1e-9);
  EXPECT_EQ(rows[0].repeats, 2U);
  const auto same = aggregate({labeled(90, 0), labeled(90, 1)});
  EXPECT_DOUBLE_EQ(same[0].std_final_best, 0.0);
  EXPECT_DOUBLE_EQ(same[0].std_avg_offline_error, 0.0);
}

TEST(Metrics, AggregateGroupsByEveryKey) {
  std::vector<LabeledTrace> traces;
  for (int k = 0; k < 7; ++k) traces.push_back(labeled(10, 0));
  traces[1].label.instance = "other";
  traces[2].label.selection = Selection::SlidingWindow;
  traces[3].label.objectives = 2;
  traces[4].label.dynamic = true;
  traces[5].label.delta = 50;
  traces[6].label.dynamic = true;
  traces[6].label.tau = 2000;
  EXPECT_EQ(aggregate(traces).size(), 7U);
}

TEST(Metrics, SummaryCsvRoundTrip) {
  std::vector<LabeledTrace> traces{labeled(90, 0), labeled(110, 1), labeled(5, 0, "b")};
  traces[2].label.dynamic = true;
  traces[2].label.tau = 1000;
  traces[2].label.gamma = 500;
  const auto rows = aggregate(traces);
  std::ostringstream out;
  write_summary_csv(out, rows);
  std::istringstream in(out.str());
  const auto back = read_summary_csv(in);
  ASSERT_EQ(back.size(), rows.size());
  std::ostringstream again;
  write_summary_csv(again, back);
  EXPECT_EQ(again.str(), out.str());
  EXPECT_EQ((RunLabel{"x", Selection::SlidingWindow, 3}.algorithm()), "SW-3D");
}
