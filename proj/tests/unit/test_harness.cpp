#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cckp/errors.hpp"
#include "cckp/harness.hpp"
#include "test_support.hpp"

using namespace cckp;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("cckp_harness_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallSpec = R"({
  "instances": [
    {"class": "uncorr", "n": 20, "seed": 1, "range": 100},
    {"class": "strong", "n": 20, "seed": 2, "range": 100, "offset": 10}
  ],
  "algorithms": ["GS-2D", "SW-3D"],
  "deltas": [5, 10],
  "alphas": [0.1, 0.01],
  "dynamics": ["static"],
  "repeats": 3,
  "master_seed": 11,
  "t_max": 2000,
  "stride": 200,
  "output": "out"
})";

}  // namespace

TEST(Harness, ParseAlgorithm) {
  EXPECT_EQ(parse_algorithm("GS-2D"), (AlgorithmChoice{Selection::Uniform, 2}));
  EXPECT_EQ(parse_algorithm("SW-3D"), (AlgorithmChoice{Selection::SlidingWindow, 3}));
  EXPECT_THROW(parse_algorithm("XX-2D"), ConfigError);
  EXPECT_THROW(parse_algorithm("GS-4D"), ConfigError);
}

TEST(Harness, ParseSpec) {
  const auto spec = parse_experiment_spec(kSmallSpec, "/base");
  EXPECT_EQ(spec.run_count(), 24U);
  EXPECT_EQ(spec.output, fs::path("/base/out"));
  EXPECT_EQ(spec.instances[1].cls, CorrelationClass::BoundedStronglyCorrelated);
  EXPECT_EQ(spec.instances[1].offset, 10);
  EXPECT_THROW(parse_experiment_spec("{", "."), ParseError);
  EXPECT_THROW(parse_experiment_spec(R"({"instances": [], "algorithms": ["GS-2D"],
      "deltas": [1], "output": "o"})", "."), ConfigError);
  EXPECT_THROW(parse_experiment_spec(R"({"instances": [{"file": "a"}], "algorithms": ["GS-2D"],
      "deltas": [1], "output": "o", "repeats": 0})", "."), ConfigError);
  EXPECT_THROW(parse_experiment_spec(R"({"instances": [{"file": "a"}], "algorithms": ["GS-2D"],
      "deltas": [1], "output": "o", "typo": 1})", "."), ConfigError);
  const auto dyn = parse_experiment_spec(R"({"instances": [{"file": "a"}], "algorithms": ["GS-2D"],
      "deltas": [1], "output": "o", "dynamics": ["static", {"tau": 10, "gamma": 3}]})", ".");
  ASSERT_EQ(dyn.dynamics.size(), 2U);
  EXPECT_FALSE(dyn.dynamics[0].has_value());
  EXPECT_EQ(dyn.dynamics[1], (DynamicParams{10, 3}));
}

TEST(Harness, ReferencePreset) {
  const auto spec = reference_experiment("x");
  EXPECT_EQ(spec.instances.size(), 6U);
  EXPECT_EQ(spec.dynamics.size(), 5U);
  EXPECT_EQ(spec.repeats, 30);
  EXPECT_EQ(spec.run_count(), 6U * 4U * 2U * 5U * 30U);
}

TEST(Harness, ExecuteRunIsDeterministic) {
  const auto inst = support::random_instance(30, 2, 100, 10);
  RunSpec spec;
  spec.selection = Selection::SlidingWindow;
  spec.objectives = 3;
  spec.dynamic = DynamicParams{500, 50};
  spec.seed = 7;
  spec.t_max = 5000;
  const RunOutput a = execute_run(inst, spec);
  const RunOutput b = execute_run(inst, spec);
  EXPECT_EQ(a.trace, b.trace);
  EXPECT_EQ(a.evaluations, 5000);
  EXPECT_EQ(a.change_points, 10);
  EXPECT_EQ(a.trace.last_t(), 5000);
  std::ostringstream da, db;
  write_archive_dump(da, a);
  write_archive_dump(db, b);
  EXPECT_EQ(da.str(), db.str());
  spec.objectives = 4;
  EXPECT_THROW(execute_run(inst, spec), ConfigError);
}

TEST(Harness, SweepCountsResumesAndSummarizes) {
  const fs::path dir = scratch("sweep");
  const auto spec = parse_experiment_spec(kSmallSpec, dir);
  SweepOptions opts;
  opts.workers = 2;
  const SweepReport first = run_sweep(spec, opts);
  EXPECT_EQ(first.runs_executed, 24U);
  EXPECT_EQ(first.runs_skipped, 0U);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir / "out" / "traces")) {
    EXPECT_EQ(e.path().extension(), ".csv");
    ++files;
  }
  EXPECT_EQ(files, 24U);
  EXPECT_TRUE(fs::exists(dir / "out" / "summary.csv"));
  const std::string summary = slurp(dir / "out" / "summary.csv");

  // Summary means match a recomputation from the trace files.
  for (const SummaryRow& row : first.summary) {
    std::vector<double> finals, averages;
    for (const auto& path : first.trace_files) {
      const std::string name = path.filename().string();
      if (name.find(row.group.instance + "__" + row.group.algorithm() + "__") != 0) continue;
      std::ostringstream d;
      d << "__d" << row.group.delta << "__";
      if (name.find(d.str()) == std::string::npos) continue;
      std::ifstream in(path);
      const RunTrace t = read_trace_csv(in);
      finals.push_back(t.final_row(row.alpha, row.estimator).best_profit);
      averages.push_back(average_offline_error(t, row.alpha, row.estimator));
    }
    ASSERT_EQ(finals.size(), 3U);
    double mf = 0, ma = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      mf += finals[k] / 3;
      ma += averages[k] / 3;
    }
    EXPECT_NEAR(row.mean_final_best, mf, 1e-6);
    EXPECT_NEAR(row.mean_avg_offline_error, ma, 1e-6);
  }

  // Remove two traces: only those are recomputed, and the summary is unchanged.
  fs::remove(first.trace_files[3]);
  fs::remove(first.trace_files[17]);
  const SweepReport second = run_sweep(spec, opts);
  EXPECT_EQ(second.runs_executed, 2U);
  EXPECT_EQ(second.runs_skipped, 22U);
  EXPECT_EQ(slurp(dir / "out" / "summary.csv"), summary);
  fs::remove_all(dir);
}

TEST(Harness, SweepIndependentOfWorkerCount) {
  const fs::path a = scratch("w1"), b = scratch("w3");
  SweepOptions one, three;
  one.workers = 1;
  three.workers = 3;
  run_sweep(parse_experiment_spec(kSmallSpec, a), one);
  run_sweep(parse_experiment_spec(kSmallSpec, b), three);
  EXPECT_EQ(slurp(a / "out" / "summary.csv"), slurp(b / "out" / "summary.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Harness, AtomicWriteReplaces) {
  const fs::path dir = scratch("atomic");
  write_file_atomic(dir / "sub" / "f.txt", "one");
  write_file_atomic(dir / "sub" / "f.txt", "two");
  EXPECT_EQ(slurp(dir / "sub" / "f.txt"), "two");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "sub")) ++entries;
  EXPECT_EQ(entries, 1U);
  fs::remove_all(dir);
}
