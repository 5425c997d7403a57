#include "cckp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cckp/errors.hpp"
#include "cckp/oracle.hpp"

namespace cckp {

namespace {

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::vector<Observer*> with_recorder(Observer& recorder, std::span<Observer* const> extra) {
  std::vector<Observer*> all{&recorder};
  all.insert(all.end(), extra.begin(), extra.end());
  return all;
}

}  // namespace

EvolverConfig make_evolver_config(const KnapsackInstance& instance, const RunSpec& spec) {
  if (spec.objectives != 2 && spec.objectives != 3)
    throw ConfigError("objectives must be 2 or 3");
  if (spec.t_max < 1) throw ConfigError("t_max must be >= 1");
  if (spec.dynamic) {
    if (spec.dynamic->tau < 1) throw ConfigError("tau must be >= 1");
    if (spec.dynamic->gamma < 0) throw ConfigError("gamma must be >= 0");
  }
  EvolverConfig cfg;
  cfg.t_max = spec.t_max;
  cfg.selection = spec.selection;
  cfg.formulation = FitnessFormulation::make(spec.dynamic.has_value(), spec.objectives,
                                             spec.dynamic ? spec.dynamic->gamma : 0);
  cfg.window_length = spec.window_length.value_or(instance.average_weight());
  cfg.seed = derive_seed(spec.seed, "evolver");
  cfg.window_bound = spec.window_bound;
  return cfg;
}

RunOutput execute_run(const KnapsackInstance& instance, const RunSpec& spec,
                      std::span<Observer* const> extra_observers) {
  const EvolverConfig cfg = make_evolver_config(instance, spec);
  RunOutput out;
  if (spec.dynamic) {
    const BoundSchedule schedule(instance.base_capacity(), spec.dynamic->tau, spec.dynamic->gamma,
                                 spec.schedule_seed.value_or(derive_seed(spec.seed, "schedule")));
    const auto epochs = schedule.epochs(spec.t_max);
    const OptimumTable optima(instance, *std::max_element(epochs.begin(), epochs.end()));
    TraceRecorder recorder(instance, optima, spec.alphas, spec.stride, spec.t_max);
    const auto observers = with_recorder(recorder, extra_observers);
    DynamicRunResult result = run_gsemo_dynamic(instance, cfg, schedule, observers);
    out.trace = recorder.take();
    out.feasible = result.state.feasible.members();
    out.backlog = result.state.backlog.members();
    out.evaluations = result.evaluations;
    out.change_points = result.change_points;
    out.final_bound = result.state.bound;
    out.schedule = schedule;
  } else {
    const OptimumTable optima(instance, instance.base_capacity());
    TraceRecorder recorder(instance, optima, spec.alphas, spec.stride, spec.t_max);
    const auto observers = with_recorder(recorder, extra_observers);
    StaticRunResult result = run_gsemo(instance, cfg, observers);
    out.trace = recorder.take();
    out.feasible = result.archive.members();
    out.evaluations = result.evaluations;
    out.final_bound = instance.base_capacity();
  }
  return out;
}

void write_archive_dump(std::ostream& out, const RunOutput& output) {
  out << "archive,bits,solution_weight,obj_profit,obj_variance,obj_weight\n";
  auto dump = [&](std::string_view name, const std::vector<Member>& members) {
    for (const Member& m : members) {
      out << name << ',' << m.solution.to_hex() << ',' << m.solution.weight() << ','
          << format_decimal(m.objectives.profit()) << ','
          << format_decimal(m.objectives.variance()) << ',';
      if (m.objectives.arity() == 3) out << format_decimal(m.objectives.weight());
      out << '\n';
    }
  };
  dump("s1", output.feasible);
  dump("s2", output.backlog);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

KnapsackInstance InstanceSource::load(const std::filesystem::path& base_dir) const {
  if (file) {
    const auto path = file->is_absolute() ? *file : base_dir / *file;
    return load_instance(path);
  }
  GeneratorOptions opts;
  opts.capacity_ratio = capacity_ratio;
  opts.perturbation = perturbation;
  opts.name = name;
  if (cls == CorrelationClass::Uncorrelated) return generate_uncorrelated(n, seed, range, opts);
  return generate_bounded_strongly_correlated(n, seed, range, offset, opts);
}

AlgorithmChoice parse_algorithm(std::string_view name) {
  if (name.size() != 5 || name[2] != '-' || name[4] != 'D')
    throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected GS-2D, SW-3D, ...)");
  AlgorithmChoice a;
  const std::string_view sel = name.substr(0, 2);
  if (sel == "GS") a.selection = Selection::Uniform;
  else if (sel == "SW") a.selection = Selection::SlidingWindow;
  else throw ConfigError("unknown algorithm '" + std::string(name) + "'");
  if (name[3] == '2') a.objectives = 2;
  else if (name[3] == '3') a.objectives = 3;
  else throw ConfigError("unknown algorithm '" + std::string(name) + "'");
  return a;
}

std::size_t ExperimentSpec::run_count() const {
  return instances.size() * algorithms.size() * deltas.size() * dynamics.size() *
         static_cast<std::size_t>(repeats);
}

namespace {

using nlohmann::json;

template <class T>
T get_field(const json& j, const char* key, const char* context) {
  if (!j.contains(key)) throw ConfigError(std::string(context) + ": missing '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(context) + ": field '" + key + "' has the wrong type");
  }
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed,
                    const char* context) {
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ConfigError(std::string(context) + ": unknown key '" + key + "'");
  }
}

InstanceSource parse_instance_source(const json& j) {
  if (!j.is_object()) throw ConfigError("instances: entries must be objects");
  InstanceSource src;
  if (j.contains("file")) {
    reject_unknown(j, {"file"}, "instance");
    src.file = get_field<std::string>(j, "file", "instance");
    return src;
  }
  reject_unknown(j, {"class", "n", "seed", "range", "offset", "perturbation", "capacity_ratio",
                     "name"},
                 "instance");
  try {
    src.cls = correlation_class_from_string(get_field<std::string>(j, "class", "instance"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  src.n = get_field<std::size_t>(j, "n", "instance");
  src.seed = get_field<std::uint64_t>(j, "seed", "instance");
  src.range = j.value("range", std::int64_t{1000});
  src.offset = j.value("offset", src.range / 10);
  src.perturbation = j.value("perturbation", std::int64_t{0});
  src.capacity_ratio = j.value("capacity_ratio", 0.5);
  src.name = j.value("name", std::string{});
  return src;
}

}  // namespace

ExperimentSpec parse_experiment_spec(std::string_view json_text,
                                     const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, std::string("experiment spec: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("experiment spec must be a JSON object");
  reject_unknown(j, {"instances", "algorithms", "deltas", "alphas", "dynamics", "repeats",
                     "master_seed", "t_max", "stride", "output"},
                 "experiment");

  ExperimentSpec spec;
  spec.base_dir = base_dir;
  for (const json& e : get_field<json>(j, "instances", "experiment"))
    spec.instances.push_back(parse_instance_source(e));
  for (const auto& name : get_field<std::vector<std::string>>(j, "algorithms", "experiment"))
    spec.algorithms.push_back(parse_algorithm(name));
  spec.deltas = get_field<std::vector<double>>(j, "deltas", "experiment");
  if (j.contains("alphas")) spec.alphas = get_field<std::vector<double>>(j, "alphas", "experiment");
  if (j.contains("dynamics")) {
    for (const json& d : j.at("dynamics")) {
      if (d.is_string() && d.get<std::string>() == "static") {
        spec.dynamics.emplace_back(std::nullopt);
        continue;
      }
      if (!d.is_object()) throw ConfigError("dynamics: entries are \"static\" or {tau, gamma}");
      reject_unknown(d, {"tau", "gamma"}, "dynamics");
      spec.dynamics.emplace_back(DynamicParams{get_field<std::int64_t>(d, "tau", "dynamics"),
                                               get_field<std::int64_t>(d, "gamma", "dynamics")});
    }
  } else {
    spec.dynamics.emplace_back(std::nullopt);
  }
  spec.repeats = j.value("repeats", 1);
  spec.master_seed = j.value("master_seed", std::uint64_t{1});
  spec.t_max = j.value("t_max", std::int64_t{1000});
  spec.stride = j.value("stride", kDefaultTraceStride);
  spec.output = get_field<std::string>(j, "output", "experiment");
  if (spec.output.is_relative()) spec.output = base_dir / spec.output;

  if (spec.instances.empty() || spec.algorithms.empty() || spec.deltas.empty() ||
      spec.dynamics.empty() || spec.alphas.empty())
    throw ConfigError("experiment matrices must be non-empty");
  if (spec.repeats < 1) throw ConfigError("repeats must be >= 1");
  if (spec.t_max < 1) throw ConfigError("t_max must be >= 1");
  if (spec.stride < 1) throw ConfigError("stride must be >= 1");
  for (double d : spec.deltas)
    if (!(d >= 0.0)) throw ConfigError("deltas must be >= 0");
  for (const auto& d : spec.dynamics)
    if (d && (d->tau < 1 || d->gamma < 0)) throw ConfigError("dynamics: tau >= 1, gamma >= 0");
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open experiment spec " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_spec(ss.str(), path.has_parent_path() ? path.parent_path() : ".");
}

ExperimentSpec reference_experiment(std::filesystem::path output, std::int64_t t_max) {
  ExperimentSpec spec;
  for (std::size_t n : {100, 300, 500}) {
    for (auto cls : {CorrelationClass::Uncorrelated, CorrelationClass::BoundedStronglyCorrelated}) {
      InstanceSource src;
      src.cls = cls;
      src.n = n;
      src.seed = 1;
      spec.instances.push_back(src);
    }
  }
  for (const char* name : {"GS-2D", "GS-3D", "SW-2D", "SW-3D"})
    spec.algorithms.push_back(parse_algorithm(name));
  spec.deltas = {25.0, 50.0};
  spec.dynamics = {std::nullopt, DynamicParams{1000, 500}, DynamicParams{1000, 1000},
                   DynamicParams{2000, 500}, DynamicParams{2000, 1000}};
  spec.repeats = 30;
  spec.t_max = t_max;
  spec.output = std::move(output);
  return spec;
}

std::size_t default_worker_count() {
  if (const char* env = std::getenv("CCKP_WORKERS")) {
    std::size_t v = 0;
    const std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

namespace {

struct Cell {
  std::size_t instance;
  AlgorithmChoice algorithm;
  double delta;
  std::optional<DynamicParams> dynamic;
  int repeat;
};

std::string dynamics_tag(const std::optional<DynamicParams>& d) {
  if (!d) return "static";
  return "tau" + std::to_string(d->tau) + "-gamma" + std::to_string(d->gamma);
}

}  // namespace

SweepReport run_sweep(const ExperimentSpec& spec, const SweepOptions& options) {
  std::vector<KnapsackInstance> instances;
  std::set<std::string> names;
  for (const InstanceSource& src : spec.instances) {
    instances.push_back(src.load(spec.base_dir));
    if (!names.insert(instances.back().name()).second)
      throw ConfigError("duplicate instance name '" + instances.back().name() + "'");
  }

  std::vector<Cell> cells;
  for (std::size_t i = 0; i < instances.size(); ++i)
    for (const auto& dyn : spec.dynamics)
      for (double delta : spec.deltas)
        for (const AlgorithmChoice& alg : spec.algorithms)
          for (int r = 0; r < spec.repeats; ++r) cells.push_back({i, alg, delta, dyn, r});

  const auto trace_dir = spec.output / "traces";
  std::filesystem::create_directories(trace_dir);

  std::vector<LabeledTrace> results(cells.size());
  std::vector<std::filesystem::path> paths(cells.size());
  std::vector<char> skipped(cells.size(), 0);
  std::atomic<std::size_t> next{0};
  std::mutex report_mutex;
  std::exception_ptr failure;

  auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= cells.size()) return;
      try {
        const Cell& c = cells[k];
        const KnapsackInstance instance = instances[c.instance].with_dispersion(c.delta);
        RunLabel label{instance.name(), c.algorithm.selection, c.algorithm.objectives,
                       c.dynamic.has_value(), c.dynamic ? c.dynamic->tau : 0,
                       c.dynamic ? c.dynamic->gamma : 0, c.delta, c.repeat};
        const std::string coords = "inst=" + instance.name() + "|dyn=" + dynamics_tag(c.dynamic) +
                                   "|delta=" + shortest(c.delta) +
                                   "|rep=" + std::to_string(c.repeat);
        paths[k] = trace_dir / (instance.name() + "__" + label.algorithm() + "__" +
                                dynamics_tag(c.dynamic) + "__d" + shortest(c.delta) + "__r" +
                                std::to_string(c.repeat) + ".csv");

        if (std::filesystem::exists(paths[k])) {
          std::ifstream in(paths[k], std::ios::binary);
          try {
            results[k] = {label, read_trace_csv(in)};
            if (results[k].trace.last_t() == spec.t_max) {
              skipped[k] = 1;
              continue;
            }
          } catch (const ParseError&) {
            // fall through and recompute
          }
        }

        RunSpec run;
        run.selection = c.algorithm.selection;
        run.objectives = c.algorithm.objectives;
        run.dynamic = c.dynamic;
        run.seed = derive_seed(spec.master_seed, coords + "|alg=" + label.algorithm());
        // Algorithms compared in the same cell face the same bound sequence.
        run.schedule_seed = derive_seed(spec.master_seed, coords + "|schedule");
        run.t_max = spec.t_max;
        run.alphas = spec.alphas;
        run.stride = spec.stride;
        RunOutput output = execute_run(instance, run);
        std::ostringstream csv;
        write_trace_csv(csv, output.trace);
        write_file_atomic(paths[k], csv.str());
        // Aggregate the rounded values on disk so resumed sweeps give the same summary.
        std::istringstream written(csv.str());
        results[k] = {label, read_trace_csv(written)};
        if (options.progress) {
          std::lock_guard lock(report_mutex);
          *options.progress << "done " << paths[k].filename().string() << '\n';
        }
      } catch (...) {
        std::lock_guard lock(report_mutex);
        if (!failure) failure = std::current_exception();
        next.store(cells.size());
        return;
      }
    }
  };

  const std::size_t workers =
      std::min(cells.size(), options.workers > 0 ? options.workers : default_worker_count());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  SweepReport report;
  report.summary = aggregate(results);
  report.trace_files = paths;
  for (char s : skipped) (s ? report.runs_skipped : report.runs_executed)++;
  report.summary_file = spec.output / "summary.csv";
  std::ostringstream csv;
  write_summary_csv(csv, report.summary);
  write_file_atomic(report.summary_file, csv.str());
  return report;
}

}  // namespace cckp
