#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cckp/archive.hpp"
#include "cckp/evolver.hpp"
#include "cckp/instance.hpp"
#include "cckp/metrics.hpp"

namespace cckp {

/// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitData = 3,
  kExitResource = 4,
};

struct DynamicParams {
  std::int64_t tau = 1000;
  std::int64_t gamma = 500;

  friend bool operator==(const DynamicParams&, const DynamicParams&) = default;
};

/// One seeded run of either GSEMO variant.
struct RunSpec {
  Selection selection = Selection::Uniform;
  int objectives = 2;
  std::optional<DynamicParams> dynamic;
  /// Evolver and schedule streams are derived from this by fixed labels.
  std::uint64_t seed = 0;
  /// Overrides the schedule stream seed (sweeps share it across algorithms).
  std::optional<std::uint64_t> schedule_seed;
  std::int64_t t_max = 1000;
  std::vector<double> alphas = kDefaultAlphas;
  std::int64_t stride = kDefaultTraceStride;
  /// Defaults to the instance's average item weight.
  std::optional<double> window_length;
  WindowBound window_bound = WindowBound::Current;
};

struct RunOutput {
  RunTrace trace;
  std::vector<Member> feasible;
  std::vector<Member> backlog;
  std::int64_t evaluations = 0;
  std::int64_t change_points = 0;
  std::int64_t final_bound = 0;
  std::optional<BoundSchedule> schedule;
};

EvolverConfig make_evolver_config(const KnapsackInstance& instance, const RunSpec& spec);

/// Runs GSEMO (static) or the two-population variant (dynamic) with a trace
/// recorder attached. Extra observers see every step as well.
RunOutput execute_run(const KnapsackInstance& instance, const RunSpec& spec,
                      std::span<Observer* const> extra_observers = {});

/// `archive,bits,solution_weight,obj_profit,obj_variance,obj_weight` rows;
/// bits are hex-encoded, obj_weight is empty for two objectives.
void write_archive_dump(std::ostream& out, const RunOutput& output);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct InstanceSource {
  std::optional<std::filesystem::path> file;
  // Generator parameters, used when `file` is empty.
  CorrelationClass cls = CorrelationClass::Uncorrelated;
  std::size_t n = 100;
  std::uint64_t seed = 1;
  std::int64_t range = 1000;
  std::int64_t offset = 100;
  std::int64_t perturbation = 0;
  double capacity_ratio = 0.5;
  std::string name;

  KnapsackInstance load(const std::filesystem::path& base_dir) const;
};

struct AlgorithmChoice {
  Selection selection = Selection::Uniform;
  int objectives = 2;

  friend bool operator==(const AlgorithmChoice&, const AlgorithmChoice&) = default;
};

AlgorithmChoice parse_algorithm(std::string_view name);

/// Full factorial experiment description (JSON on disk).
struct ExperimentSpec {
  std::vector<InstanceSource> instances;
  std::vector<AlgorithmChoice> algorithms;
  std::vector<double> deltas;
  std::vector<double> alphas = kDefaultAlphas;
  /// nullopt entries are static runs.
  std::vector<std::optional<DynamicParams>> dynamics;
  int repeats = 1;
  std::uint64_t master_seed = 1;
  std::int64_t t_max = 1000;
  std::int64_t stride = kDefaultTraceStride;
  std::filesystem::path output;
  /// Directory relative instance paths are resolved against.
  std::filesystem::path base_dir = ".";

  std::size_t run_count() const;
};

/// Parses the JSON experiment format; relative paths resolve against base_dir.
ExperimentSpec parse_experiment_spec(std::string_view json_text,
                                     const std::filesystem::path& base_dir = ".");
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

/// Mirrors the reference setup: n in {100, 300, 500}, both classes,
/// delta in {25, 50}, static plus the four (tau, gamma) pairs, 30 repeats.
ExperimentSpec reference_experiment(std::filesystem::path output, std::int64_t t_max = 1000000);

struct SweepOptions {
  /// 0 means CCKP_WORKERS from the environment, else hardware concurrency.
  std::size_t workers = 0;
  std::ostream* progress = nullptr;
};

struct SweepReport {
  std::size_t runs_executed = 0;
  std::size_t runs_skipped = 0;
  std::vector<std::filesystem::path> trace_files;
  std::filesystem::path summary_file;
  std::vector<SummaryRow> summary;
};

/// Executes every cell, writing one trace CSV per run under output/traces and
/// output/summary.csv. Runs whose trace file already exists are read back
/// instead of re-executed.
SweepReport run_sweep(const ExperimentSpec& spec, const SweepOptions& options = {});

std::size_t default_worker_count();

}  // namespace cckp
