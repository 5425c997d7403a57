#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "cckp/errors.hpp"
#include "cckp/harness.hpp"
#include "cckp/oracle.hpp"

namespace py = pybind11;
using namespace cckp;

namespace {

Solution solution_from_list(const KnapsackInstance& inst, const std::vector<bool>& bits) {
  if (bits.size() != inst.size()) throw std::invalid_argument("bit vector length differs from n");
  Solution x(inst.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) x.flip(i, inst);
  return x;
}

py::dict trace_columns(const RunTrace& trace) {
  std::vector<std::int64_t> t, bound;
  std::vector<double> alpha, best, error;
  std::vector<std::string> estimator;
  std::vector<std::size_t> s1, s2;
  for (const TraceRow& r : trace.rows) {
    t.push_back(r.t);
    bound.push_back(r.bound);
    alpha.push_back(r.alpha);
    estimator.emplace_back(to_string(r.estimator));
    best.push_back(r.best_profit);
    error.push_back(r.offline_error);
    s1.push_back(r.archive_s1);
    s2.push_back(r.archive_s2);
  }
  py::dict d;
  d["t"] = t;
  d["bound"] = bound;
  d["alpha"] = alpha;
  d["estimator"] = estimator;
  d["best_profit"] = best;
  d["offline_error"] = error;
  d["archive_s1"] = s1;
  d["archive_s2"] = s2;
  return d;
}

py::list member_list(const std::vector<Member>& members) {
  py::list out;
  for (const Member& m : members) {
    py::dict d;
    d["bits"] = m.solution.to_hex();
    d["weight"] = m.solution.weight();
    d["cardinality"] = m.solution.cardinality();
    d["objectives"] = std::vector<double>(
        {m.objectives.profit(), m.objectives.variance(), m.objectives.weight()});
    if (m.objectives.arity() == 2) d["objectives"] = std::vector<double>(
        {m.objectives.profit(), m.objectives.variance()});
    out.append(d);
  }
  return out;
}

py::dict summary_row(const SummaryRow& r) {
  py::dict d;
  d["instance"] = r.group.instance;
  d["algorithm"] = r.group.algorithm();
  d["dynamic"] = r.group.dynamic;
  d["tau"] = r.group.tau;
  d["gamma"] = r.group.gamma;
  d["delta"] = r.group.delta;
  d["alpha"] = r.alpha;
  d["estimator"] = std::string(to_string(r.estimator));
  d["repeats"] = r.repeats;
  d["mean_final_best"] = r.mean_final_best;
  d["std_final_best"] = r.std_final_best;
  d["mean_avg_offline_error"] = r.mean_avg_offline_error;
  d["std_avg_offline_error"] = r.std_avg_offline_error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chance-constrained knapsack solvers";

  static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  static py::exception<ResourceError> resource_error(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const ResourceError& e) {
      py::set_error(resource_error, e.what());
    }
  });

  py::class_<KnapsackInstance>(m, "Instance")
      .def(py::init([](const std::vector<std::int64_t>& weights,
                       const std::vector<std::int64_t>& profits, std::int64_t capacity,
                       double dispersion, const std::string& name) {
             if (weights.size() != profits.size())
               throw std::invalid_argument("weights and profits differ in length");
             std::vector<Item> items;
             for (std::size_t i = 0; i < weights.size(); ++i)
               items.push_back({i, weights[i], profits[i]});
             return KnapsackInstance(std::move(items), capacity, dispersion,
                                     CorrelationClass::Uncorrelated, name);
           }),
           py::arg("weights"), py::arg("profits"), py::arg("capacity"),
           py::arg("dispersion") = 0.0, py::arg("name") = "instance")
      .def_static("parse", &parse_instance)
      .def_static("load", [](const std::filesystem::path& p) { return load_instance(p); })
      .def("save", [](const KnapsackInstance& i, const std::filesystem::path& p) { save_instance(i, p); })
      .def("serialize", &serialize_instance)
      .def("with_dispersion", &KnapsackInstance::with_dispersion)
      .def("with_capacity", &KnapsackInstance::with_capacity)
      .def_property_readonly("n", &KnapsackInstance::size)
      .def_property_readonly("capacity", &KnapsackInstance::base_capacity)
      .def_property_readonly("dispersion", &KnapsackInstance::dispersion)
      .def_property_readonly("name", &KnapsackInstance::name)
      .def_property_readonly("total_weight", &KnapsackInstance::total_weight)
      .def_property_readonly("average_weight", &KnapsackInstance::average_weight)
      .def_property_readonly("weights", [](const KnapsackInstance& i) {
        std::vector<std::int64_t> w;
        for (const Item& it : i.items()) w.push_back(it.weight);
        return w;
      })
      .def_property_readonly("profits", [](const KnapsackInstance& i) {
        std::vector<std::int64_t> p;
        for (const Item& it : i.items()) p.push_back(it.expected_profit);
        return p;
      })
      .def("__len__", &KnapsackInstance::size)
      .def("__repr__", [](const KnapsackInstance& i) {
        return "<Instance " + i.name() + " n=" + std::to_string(i.size()) +
               " capacity=" + std::to_string(i.base_capacity()) + ">";
      });

  m.def("generate", [](const std::string& cls, std::size_t n, std::uint64_t seed,
                       std::int64_t range, std::optional<std::int64_t> offset, double dispersion,
                       double capacity_ratio, std::int64_t perturbation, const std::string& name) {
        GeneratorOptions opts{dispersion, capacity_ratio, perturbation, name};
        if (correlation_class_from_string(cls) == CorrelationClass::Uncorrelated)
          return generate_uncorrelated(n, seed, range, opts);
        return generate_bounded_strongly_correlated(n, seed, range, offset.value_or(range / 10), opts);
      },
      py::arg("cls"), py::arg("n"), py::arg("seed"), py::arg("range") = 1000,
      py::arg("offset") = py::none(), py::arg("dispersion") = 25.0,
      py::arg("capacity_ratio") = 0.5, py::arg("perturbation") = 0, py::arg("name") = "");

  m.def("cheb_estimate",
        [](double mean, double variance, double alpha) {
          check_alpha(Estimator::Cheb, alpha);
          return cheb_estimate(mean, variance, alpha);
        },
        py::arg("mean"), py::arg("variance"), py::arg("alpha"));
  m.def("hoef_estimate",
        [](double mean, std::size_t cardinality, double dispersion, double alpha) {
          check_alpha(Estimator::Hoef, alpha);
          return hoef_estimate(mean, cardinality, dispersion, alpha);
        },
        py::arg("mean"), py::arg("cardinality"), py::arg("dispersion"), py::arg("alpha"));
  m.def("profit_estimate", [](const KnapsackInstance& inst, const std::vector<bool>& bits,
                              double alpha, const std::string& estimator) {
        return profit_estimate(estimator_from_string(estimator), solution_from_list(inst, bits),
                               inst, alpha);
      },
      py::arg("instance"), py::arg("bits"), py::arg("alpha"), py::arg("estimator") = "cheb");

  m.def("deterministic_optimum",
        [](const KnapsackInstance& i, std::int64_t c) { return deterministic_optimum(i, c); },
        py::arg("instance"), py::arg("capacity"));
  m.def("optimum_for_bounds",
        [](const KnapsackInstance& i, const std::vector<std::int64_t>& b) {
          return optimum_for_bounds(i, b);
        },
        py::arg("instance"), py::arg("bounds"));
  m.def("brute_force_best",
        [](const KnapsackInstance& i, std::int64_t c, double a, const std::string& e) {
          return brute_force_best(i, c, a, estimator_from_string(e));
        },
        py::arg("instance"), py::arg("capacity"), py::arg("alpha"), py::arg("estimator") = "cheb");

  m.def("bound_schedule",
        [](std::int64_t initial, std::int64_t tau, std::int64_t gamma, std::uint64_t seed,
           std::int64_t t_max) {
          std::vector<std::pair<std::int64_t, std::int64_t>> out{{0, initial}};
          for (const BoundChange& c : BoundSchedule(initial, tau, gamma, seed).changes_in(t_max))
            out.emplace_back(c.t, c.bound);
          return out;
        },
        py::arg("initial"), py::arg("tau"), py::arg("gamma"), py::arg("seed"), py::arg("t_max"));

  m.def("run",
        [](const KnapsackInstance& inst, const std::string& selection, int objectives,
           std::optional<std::pair<std::int64_t, std::int64_t>> dynamic, std::uint64_t seed,
           std::int64_t t_max, std::vector<double> alphas, std::int64_t stride,
           std::optional<double> window_length) {
          RunSpec spec;
          if (selection == "uniform") spec.selection = Selection::Uniform;
          else if (selection == "sliding") spec.selection = Selection::SlidingWindow;
          else throw ConfigError("selection must be 'uniform' or 'sliding'");
          spec.objectives = objectives;
          if (dynamic) spec.dynamic = DynamicParams{dynamic->first, dynamic->second};
          spec.seed = seed;
          spec.t_max = t_max;
          spec.alphas = std::move(alphas);
          spec.stride = stride;
          spec.window_length = window_length;
          RunOutput out;
          {
            py::gil_scoped_release release;
            out = execute_run(inst, spec);
          }
          std::ostringstream csv;
          write_trace_csv(csv, out.trace);
          py::dict d;
          d["trace"] = trace_columns(out.trace);
          d["trace_csv"] = csv.str();
          d["feasible"] = member_list(out.feasible);
          d["backlog"] = member_list(out.backlog);
          d["evaluations"] = out.evaluations;
          d["change_points"] = out.change_points;
          d["final_bound"] = out.final_bound;
          return d;
        },
        py::arg("instance"), py::arg("selection") = "uniform", py::arg("objectives") = 2,
        py::arg("dynamic") = py::none(), py::arg("seed") = 0, py::arg("t_max") = 1000,
        py::arg("alphas") = kDefaultAlphas, py::arg("stride") = kDefaultTraceStride,
        py::arg("window_length") = py::none(),
        "Execute one seeded run. `dynamic` is a (tau, gamma) pair or None for a static bound.");

  m.def("sweep",
        [](const std::filesystem::path& spec_path, std::size_t workers) {
          const ExperimentSpec spec = load_experiment_spec(spec_path);
          SweepReport report;
          {
            py::gil_scoped_release release;
            report = run_sweep(spec, SweepOptions{workers, nullptr});
          }
          py::list rows;
          for (const SummaryRow& r : report.summary) rows.append(summary_row(r));
          py::dict d;
          d["runs_executed"] = report.runs_executed;
          d["runs_skipped"] = report.runs_skipped;
          d["summary_file"] = report.summary_file;
          d["summary"] = rows;
          return d;
        },
        py::arg("spec"), py::arg("workers") = 0);
}
