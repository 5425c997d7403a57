#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "cckp/archive.hpp"
#include "cckp/evolver.hpp"
#include "cckp/instance.hpp"
#include "cckp/oracle.hpp"
#include "cckp/profit_model.hpp"

namespace cckp {

inline const std::vector<double> kDefaultAlphas{0.1, 0.01, 0.001, 0.0001};
inline constexpr std::int64_t kDefaultTraceStride = 100;

struct TraceRow {
  std::int64_t t = 0;
  std::int64_t bound = 0;
  double alpha = 0.0;
  Estimator estimator = Estimator::Cheb;
  double best_profit = 0.0;
  double offline_error = 0.0;
  std::size_t archive_s1 = 0;
  std::size_t archive_s2 = 0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct RunTrace {
  std::vector<TraceRow> rows;

  /// Rows of one (alpha, estimator) column in time order.
  std::vector<TraceRow> column(double alpha, Estimator estimator) const;
  /// Row with the largest t in the given column.
  const TraceRow& final_row(double alpha, Estimator estimator) const;
  std::int64_t last_t() const;

  friend bool operator==(const RunTrace&, const RunTrace&) = default;
};

/// Best estimate over the members of `feasible` with weight <= bound; 0 (the
/// empty selection) when there is none.
double best_feasible_estimate(const Archive& feasible, std::int64_t bound,
                              const KnapsackInstance& instance, double alpha, Estimator estimator);

/// P_opt minus the best estimate among the feasible members.
double offline_error(const Archive& feasible, std::int64_t bound, std::int64_t optimum,
                     const KnapsackInstance& instance, double alpha, Estimator estimator);

double average_offline_error(const RunTrace& trace, double alpha, Estimator estimator);

/// Observer that samples the feasible archive into a RunTrace at t = 1,
/// every `stride` evaluations, every change point, and at t_max.
class TraceRecorder : public Observer {
 public:
  TraceRecorder(const KnapsackInstance& instance, const OptimumTable& optima,
                std::vector<double> alphas, std::int64_t stride, std::int64_t t_max);

  void on_step(const StepEvent& event) override;

  const RunTrace& trace() const { return trace_; }
  RunTrace take() { return std::move(trace_); }

 private:
  const KnapsackInstance& instance_;
  const OptimumTable& optima_;
  std::vector<double> alphas_;
  std::int64_t stride_;
  std::int64_t t_max_;
  RunTrace trace_;
  std::vector<double> means_;
  std::vector<std::size_t> cards_;
};

void write_trace_csv(std::ostream& out, const RunTrace& trace);
RunTrace read_trace_csv(std::istream& in);

/// Coordinates of one run inside an experiment.
struct RunLabel {
  std::string instance;
  Selection selection = Selection::Uniform;
  int objectives = 2;
  bool dynamic = false;
  std::int64_t tau = 0;
  std::int64_t gamma = 0;
  double delta = 0.0;
  int repeat = 0;

  /// GS-2D, GS-3D, SW-2D or SW-3D.
  std::string algorithm() const;
};

struct LabeledTrace {
  RunLabel label;
  RunTrace trace;
};

struct SummaryRow {
  RunLabel group;  ///< repeat is unused
  double alpha = 0.0;
  Estimator estimator = Estimator::Cheb;
  std::size_t repeats = 0;
  double mean_final_best = 0.0;
  double std_final_best = 0.0;
  double mean_avg_offline_error = 0.0;
  double std_avg_offline_error = 0.0;
};

/// Mean and sample standard deviation per group (instance, algorithm,
/// dynamic params, delta, alpha, estimator) across repeats.
std::vector<SummaryRow> aggregate(const std::vector<LabeledTrace>& traces);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);

/// Fixed 9-decimal rendering used by every CSV writer.
std::string format_decimal(double value);

}  // namespace cckp
