#include "cckp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "cckp/errors.hpp"

namespace cckp {

namespace {

constexpr Estimator kEstimators[] = {Estimator::Cheb, Estimator::Hoef};

constexpr const char* kTraceHeader =
    "t,bound,alpha,estimator,best_profit,offline_error,archive_s1,archive_s2";
constexpr const char* kSummaryHeader =
    "instance,algorithm,selection,objectives,mode,tau,gamma,delta,alpha,estimator,repeats,"
    "mean_final_best,std_final_best,mean_avg_offline_error,std_avg_offline_error";

double estimate(Estimator e, double mean, std::size_t card, double dispersion, double variance_unit,
                double alpha) {
  if (e == Estimator::Cheb)
    return cheb_estimate(mean, static_cast<double>(card) * variance_unit, alpha);
  return hoef_estimate(mean, card, dispersion, alpha);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "invalid number '" + s + "'");
  }
}

std::int64_t parse_int(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "invalid integer '" + s + "'");
  }
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

std::string format_decimal(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", value);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::vector<TraceRow> RunTrace::column(double alpha, Estimator estimator) const {
  std::vector<TraceRow> out;
  for (const TraceRow& r : rows)
    if (r.alpha == alpha && r.estimator == estimator) out.push_back(r);
  return out;
}

const TraceRow& RunTrace::final_row(double alpha, Estimator estimator) const {
  const TraceRow* best = nullptr;
  for (const TraceRow& r : rows)
    if (r.alpha == alpha && r.estimator == estimator && (!best || r.t >= best->t)) best = &r;
  if (!best) throw std::invalid_argument("trace has no rows for the requested column");
  return *best;
}

std::int64_t RunTrace::last_t() const {
  std::int64_t t = 0;
  for (const TraceRow& r : rows) t = std::max(t, r.t);
  return t;
}

double best_feasible_estimate(const Archive& feasible, std::int64_t bound,
                              const KnapsackInstance& instance, double alpha, Estimator estimator) {
  check_alpha(estimator, alpha);
  bool found = false;
  double best = 0.0;
  for (std::size_t i = 0; i < feasible.size(); ++i) {
    const Solution& x = feasible.solution(i);
    if (x.weight() > bound) continue;
    const double v = estimate(estimator, static_cast<double>(x.expectation()), x.cardinality(),
                              instance.dispersion(), instance.item_variance(), alpha);
    if (!found || v > best) best = v;
    found = true;
  }
  return best;
}

double offline_error(const Archive& feasible, std::int64_t bound, std::int64_t optimum,
                     const KnapsackInstance& instance, double alpha, Estimator estimator) {
  return static_cast<double>(optimum) -
         best_feasible_estimate(feasible, bound, instance, alpha, estimator);
}

double average_offline_error(const RunTrace& trace, double alpha, Estimator estimator) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const TraceRow& r : trace.rows) {
    if (r.alpha != alpha || r.estimator != estimator) continue;
    sum += r.offline_error;
    ++count;
  }
  if (count == 0) throw std::invalid_argument("trace has no rows for the requested column");
  return sum / static_cast<double>(count);
}

TraceRecorder::TraceRecorder(const KnapsackInstance& instance, const OptimumTable& optima,
                             std::vector<double> alphas, std::int64_t stride, std::int64_t t_max)
    : instance_(instance), optima_(optima), alphas_(std::move(alphas)), stride_(stride),
      t_max_(t_max) {
  if (alphas_.empty()) throw ConfigError("at least one alpha is required");
  for (double a : alphas_)
    for (Estimator e : kEstimators) {
      try {
        check_alpha(e, a);
      } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
      }
    }
  if (stride_ < 1) throw ConfigError("trace stride must be >= 1");
}

void TraceRecorder::on_step(const StepEvent& event) {
  const std::int64_t t = event.t;
  if (!(t == 1 || t % stride_ == 0 || event.change_point || t == t_max_)) return;

  const Archive& s1 = event.feasible;
  means_.clear();
  cards_.clear();
  for (std::size_t i = 0; i < s1.size(); ++i) {
    const Solution& x = s1.solution(i);
    if (x.weight() > event.bound) continue;
    means_.push_back(static_cast<double>(x.expectation()));
    cards_.push_back(x.cardinality());
  }
  const std::int64_t optimum = optima_.at(event.bound);
  const std::size_t s2 = event.backlog ? event.backlog->size() : 0;
  for (double alpha : alphas_) {
    for (Estimator e : kEstimators) {
      double best = 0.0;
      for (std::size_t i = 0; i < means_.size(); ++i) {
        const double v = estimate(e, means_[i], cards_[i], instance_.dispersion(),
                                  instance_.item_variance(), alpha);
        if (i == 0 || v > best) best = v;
      }
      trace_.rows.push_back({t, event.bound, alpha, e, best,
                             static_cast<double>(optimum) - best, s1.size(), s2});
    }
  }
}

void write_trace_csv(std::ostream& out, const RunTrace& trace) {
  out << kTraceHeader << '\n';
  for (const TraceRow& r : trace.rows) {
    out << r.t << ',' << r.bound << ',' << format_decimal(r.alpha) << ',' << to_string(r.estimator)
        << ',' << format_decimal(r.best_profit) << ',' << format_decimal(r.offline_error) << ','
        << r.archive_s1 << ',' << r.archive_s2 << '\n';
  }
}

RunTrace read_trace_csv(std::istream& in) {
  RunTrace trace;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kTraceHeader) throw ParseError(1, "missing trace header");
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 8) throw ParseError(line_no, "expected 8 fields");
    TraceRow r;
    r.t = parse_int(f[0], line_no);
    r.bound = parse_int(f[1], line_no);
    r.alpha = parse_double(f[2], line_no);
    try {
      r.estimator = estimator_from_string(f[3]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    r.best_profit = parse_double(f[4], line_no);
    r.offline_error = parse_double(f[5], line_no);
    r.archive_s1 = static_cast<std::size_t>(parse_int(f[6], line_no));
    r.archive_s2 = static_cast<std::size_t>(parse_int(f[7], line_no));
    trace.rows.push_back(r);
  }
  return trace;
}

std::string RunLabel::algorithm() const {
  return std::string(selection == Selection::Uniform ? "GS" : "SW") + "-" +
         std::to_string(objectives) + "D";
}

std::vector<SummaryRow> aggregate(const std::vector<LabeledTrace>& traces) {
  using Key = std::tuple<std::string, int, int, bool, std::int64_t, std::int64_t, double, double,
                         int>;
  struct Acc {
    RunLabel group;
    std::vector<double> finals;
    std::vector<double> errors;
  };
  std::map<Key, Acc> groups;
  for (const LabeledTrace& lt : traces) {
    const RunLabel& l = lt.label;
    std::map<std::pair<double, int>, bool> seen;
    for (const TraceRow& r : lt.trace.rows) {
      const int est = static_cast<int>(r.estimator);
      if (!seen.emplace(std::pair{r.alpha, est}, true).second) continue;
      const Key key{l.instance, static_cast<int>(l.selection), l.objectives, l.dynamic, l.tau,
                    l.gamma,    l.delta,                    r.alpha,      est};
      Acc& acc = groups[key];
      acc.group = l;
      acc.group.repeat = 0;
      acc.finals.push_back(lt.trace.final_row(r.alpha, r.estimator).best_profit);
      acc.errors.push_back(average_offline_error(lt.trace, r.alpha, r.estimator));
    }
  }
  std::vector<SummaryRow> out;
  out.reserve(groups.size());
  for (const auto& [key, acc] : groups) {
    SummaryRow row;
    row.group = acc.group;
    row.alpha = std::get<7>(key);
    row.estimator = static_cast<Estimator>(std::get<8>(key));
    row.repeats = acc.finals.size();
    row.mean_final_best = mean_of(acc.finals);
    row.std_final_best = sample_std(acc.finals);
    row.mean_avg_offline_error = mean_of(acc.errors);
    row.std_avg_offline_error = sample_std(acc.errors);
    out.push_back(row);
  }
  return out;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const SummaryRow& r : rows) {
    const RunLabel& g = r.group;
    out << g.instance << ',' << g.algorithm() << ',' << to_string(g.selection) << ','
        << g.objectives << ',' << (g.dynamic ? "dynamic" : "static") << ',' << g.tau << ','
        << g.gamma << ',' << format_decimal(g.delta) << ',' << format_decimal(r.alpha) << ','
        << to_string(r.estimator) << ',' << r.repeats << ',' << format_decimal(r.mean_final_best)
        << ',' << format_decimal(r.std_final_best) << ','
        << format_decimal(r.mean_avg_offline_error) << ','
        << format_decimal(r.std_avg_offline_error) << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::vector<SummaryRow> rows;
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kSummaryHeader)
    throw ParseError(1, "missing summary header");
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 15) throw ParseError(line_no, "expected 15 fields");
    SummaryRow r;
    RunLabel& g = r.group;
    g.instance = f[0];
    if (f[2] == "uniform") g.selection = Selection::Uniform;
    else if (f[2] == "sliding") g.selection = Selection::SlidingWindow;
    else throw ParseError(line_no, "unknown selection '" + f[2] + "'");
    g.objectives = static_cast<int>(parse_int(f[3], line_no));
    if (f[4] != "static" && f[4] != "dynamic") throw ParseError(line_no, "unknown mode");
    g.dynamic = f[4] == "dynamic";
    g.tau = parse_int(f[5], line_no);
    g.gamma = parse_int(f[6], line_no);
    g.delta = parse_double(f[7], line_no);
    r.alpha = parse_double(f[8], line_no);
    try {
      r.estimator = estimator_from_string(f[9]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
    r.repeats = static_cast<std::size_t>(parse_int(f[10], line_no));
    r.mean_final_best = parse_double(f[11], line_no);
    r.std_final_best = parse_double(f[12], line_no);
    r.mean_avg_offline_error = parse_double(f[13], line_no);
    r.std_avg_offline_error = parse_double(f[14], line_no);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace cckp
