#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cckp/errors.hpp"
#include "cckp/harness.hpp"
#include "cckp/oracle.hpp"

namespace {

using namespace cckp;

struct GenerateArgs {
  std::string cls = "uncorr";
  std::size_t n = 100;
  std::uint64_t seed = 1;
  std::int64_t range = 1000;
  std::optional<std::int64_t> offset;
  std::int64_t perturbation = 0;
  double dispersion = 25.0;
  double capacity_ratio = 0.5;
  std::string name;
  std::string out;
};

struct RunArgs {
  std::string instance;
  std::string select = "uniform";
  int objectives = 2;
  bool is_static = false;
  bool dynamic = false;
  std::optional<std::int64_t> tau;
  std::optional<std::int64_t> gamma;
  std::uint64_t seed = 0;
  std::int64_t t_max = 1000;
  std::vector<double> alphas = kDefaultAlphas;
  std::int64_t stride = kDefaultTraceStride;
  std::optional<double> delta;
  std::optional<double> window_length;
  std::string window_bound = "current";
  std::string out = ".";
};

struct SweepArgs {
  std::string spec;
  std::size_t workers = 0;
  bool quiet = false;
};

struct OptArgs {
  std::string instance;
  std::vector<std::int64_t> bounds;
};

int cmd_generate(const GenerateArgs& a) {
  GeneratorOptions opts;
  opts.dispersion = a.dispersion;
  opts.capacity_ratio = a.capacity_ratio;
  opts.perturbation = a.perturbation;
  opts.name = a.name;
  const auto cls = correlation_class_from_string(a.cls);
  const KnapsackInstance inst =
      cls == CorrelationClass::Uncorrelated
          ? generate_uncorrelated(a.n, a.seed, a.range, opts)
          : generate_bounded_strongly_correlated(a.n, a.seed, a.range,
                                                 a.offset.value_or(a.range / 10), opts);
  const std::string text = serialize_instance(inst);
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
  } else {
    write_file_atomic(a.out, text);
  }
  return kExitOk;
}

int cmd_run(const RunArgs& a) {
  if (a.is_static && (a.dynamic || a.tau || a.gamma))
    throw ConfigError("--static cannot be combined with --dynamic, --tau or --gamma");
  if (!a.dynamic && (a.tau || a.gamma)) throw ConfigError("--tau and --gamma require --dynamic");

  KnapsackInstance inst = load_instance(a.instance);
  if (a.delta) inst = inst.with_dispersion(*a.delta);

  RunSpec spec;
  spec.selection = a.select == "sliding" ? Selection::SlidingWindow : Selection::Uniform;
  spec.objectives = a.objectives;
  if (a.dynamic) {
    DynamicParams d;
    if (a.tau) d.tau = *a.tau;
    if (a.gamma) d.gamma = *a.gamma;
    spec.dynamic = d;
  }
  spec.seed = a.seed;
  spec.t_max = a.t_max;
  spec.alphas = a.alphas;
  spec.stride = a.stride;
  spec.window_length = a.window_length;
  spec.window_bound = a.window_bound == "initial" ? WindowBound::Initial : WindowBound::Current;

  const RunOutput out = execute_run(inst, spec);
  const std::filesystem::path dir(a.out);
  std::ostringstream trace, archive;
  write_trace_csv(trace, out.trace);
  write_archive_dump(archive, out);
  write_file_atomic(dir / "trace.csv", trace.str());
  write_file_atomic(dir / "archive.csv", archive.str());
  if (out.schedule) {
    std::ostringstream schedule;
    write_schedule_csv(schedule, *out.schedule, a.t_max);
    write_file_atomic(dir / "schedule.csv", schedule.str());
  }
  std::cout << "evaluations " << out.evaluations << "\nchange_points " << out.change_points
            << "\nfinal_bound " << out.final_bound << "\ns1 " << out.feasible.size() << "\ns2 "
            << out.backlog.size() << '\n';
  return kExitOk;
}

int cmd_sweep(const SweepArgs& a) {
  const ExperimentSpec spec = load_experiment_spec(a.spec);
  SweepOptions opts;
  opts.workers = a.workers;
  opts.progress = a.quiet ? nullptr : &std::cerr;
  const SweepReport report = run_sweep(spec, opts);
  std::cout << "runs " << report.trace_files.size() << " executed " << report.runs_executed
            << " skipped " << report.runs_skipped << "\nsummary " << report.summary_file.string()
            << '\n';
  return kExitOk;
}

int cmd_opt(const OptArgs& a) {
  const KnapsackInstance inst = load_instance(a.instance);
  for (std::int64_t b : a.bounds)
    if (b < 0) throw ConfigError("bounds must be >= 0");
  const auto optima = optimum_for_bounds(inst, a.bounds);
  std::cout << "capacity,optimum\n";
  for (const auto& [cap, value] : optima) std::cout << cap << ',' << value << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chance-constrained knapsack solver and experiment harness"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a random instance");
  g->add_option("--class", gen.cls, "uncorr or strong")
      ->check(CLI::IsMember({"uncorr", "strong"}));
  g->add_option("--n", gen.n, "Number of items")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed);
  g->add_option("--range", gen.range, "Weights and profits drawn from [1, range]")
      ->check(CLI::PositiveNumber);
  g->add_option("--offset", gen.offset, "Profit offset for the strong class (default range/10)");
  g->add_option("--perturbation", gen.perturbation)->check(CLI::NonNegativeNumber);
  g->add_option("--dispersion", gen.dispersion, "Profit dispersion delta")
      ->check(CLI::NonNegativeNumber);
  g->add_option("--capacity-ratio", gen.capacity_ratio)->check(CLI::Range(0.0, 1.0));
  g->add_option("--name", gen.name);
  g->add_option("--out", gen.out, "Output file (stdout if omitted)");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Execute one seeded run");
  r->add_option("--instance", run.instance)->required();
  r->add_option("--select", run.select)->check(CLI::IsMember({"uniform", "sliding"}));
  r->add_option("--objectives", run.objectives)->check(CLI::IsMember({2, 3}));
  r->add_flag("--static", run.is_static);
  r->add_flag("--dynamic", run.dynamic);
  r->add_option("--tau", run.tau);
  r->add_option("--gamma", run.gamma);
  r->add_option("--seed", run.seed);
  r->add_option("--t-max", run.t_max)->check(CLI::PositiveNumber);
  r->add_option("--alphas", run.alphas)->delimiter(',');
  r->add_option("--stride", run.stride)->check(CLI::PositiveNumber);
  r->add_option("--delta", run.delta, "Override the instance dispersion");
  r->add_option("--window-length", run.window_length);
  r->add_option("--window-bound", run.window_bound)
      ->check(CLI::IsMember({"current", "initial"}));
  r->add_option("--out", run.out, "Output directory");

  SweepArgs sweep;
  auto* s = app.add_subcommand("sweep", "Run an experiment spec (JSON)");
  s->add_option("--spec", sweep.spec)->required();
  s->add_option("--workers", sweep.workers, "Worker threads (default CCKP_WORKERS or all cores)");
  s->add_flag("--quiet", sweep.quiet);

  OptArgs opt;
  auto* o = app.add_subcommand("opt", "Deterministic optimum per capacity");
  o->add_option("--instance", opt.instance)->required();
  o->add_option("--bounds", opt.bounds)->delimiter(',')->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*r) return cmd_run(run);
    if (*s) return cmd_sweep(sweep);
    if (*o) return cmd_opt(opt);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
