#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "cckp/archive.hpp"
#include "cckp/dynamics.hpp"
#include "cckp/instance.hpp"
#include "cckp/objectives.hpp"
#include "cckp/rng.hpp"
#include "cckp/solution.hpp"

namespace cckp {

enum class Selection { Uniform, SlidingWindow };

std::string_view to_string(Selection s);

/// Which bound the sliding window scales in dynamic runs.
enum class WindowBound { Current, Initial };

struct EvolverConfig {
  std::int64_t t_max = 1;
  Selection selection = Selection::Uniform;
  FitnessFormulation formulation{FormulationKind::Static2D};
  /// Sliding-window length in weight units; the average item weight in the
  /// reference setup. Only read when selection is SlidingWindow.
  double window_length = 0.0;
  std::uint64_t seed = 0;
  WindowBound window_bound = WindowBound::Current;
};

/// Standard bit mutation: flips each bit independently with probability 1/n.
Solution mutate(const Solution& parent, const KnapsackInstance& instance, Rng& rng);

const Solution& select_uniform(const PopulationView& population, Rng& rng);

/// Uniform choice among members with floor(b) <= w(x) <= ceil(b + window_length),
/// b = (t / t_max) * bound; the whole population when t >= t_max or the
/// window is empty.
const Solution& select_sliding_window(const PopulationView& population, std::int64_t bound,
                                      std::int64_t t, std::int64_t t_max, double window_length,
                                      Rng& rng);

/// Feasible archive plus a backlog of solutions within gamma above the bound.
struct DynamicState {
  Archive feasible;
  Archive backlog;
  std::int64_t bound;

  /// feasible: w <= bound; backlog: bound < w <= bound + gamma.
  bool satisfies_bounds(std::int64_t gamma) const;
};

/// Re-evaluates every member under `new_bound` and re-partitions them:
/// w <= new_bound to the feasible archive, up to new_bound + gamma to the
/// backlog, anything heavier is dropped. Each side keeps its non-dominated
/// subset. Returns the state untouched if the bound did not move.
DynamicState repair_populations(DynamicState state, std::int64_t new_bound,
                                const KnapsackInstance& instance,
                                const FitnessFormulation& formulation);

/// Archive an offspring was offered to. Static runs only use Primary.
enum class Placement { Primary, Backlog, Discarded };

/// Passed to observers after every fitness evaluation (t = 1 is the initial
/// empty solution).
struct StepEvent {
  std::int64_t t;
  std::int64_t bound;
  /// t is a multiple of the change interval (dynamic runs only).
  bool change_point;
  const Solution& offspring;
  const ObjectiveVector& objectives;
  Placement placement;
  InsertOutcome outcome;
  const Archive& feasible;
  /// Null in static runs.
  const Archive* backlog;
};

class Observer {
 public:
  virtual ~Observer() = default;
  virtual void on_step(const StepEvent& event) = 0;
};

struct StaticRunResult {
  Archive archive;
  std::int64_t evaluations = 0;
};

struct DynamicRunResult {
  DynamicState state;
  std::int64_t evaluations = 0;
  std::int64_t change_points = 0;
};

/// GSEMO under the instance's base capacity, starting from the empty
/// selection and spending exactly config.t_max evaluations.
StaticRunResult run_gsemo(const KnapsackInstance& instance, const EvolverConfig& config,
                          std::span<Observer* const> observers = {});

/// Two-population GSEMO under a moving bound.
DynamicRunResult run_gsemo_dynamic(const KnapsackInstance& instance, const EvolverConfig& config,
                                   const BoundSchedule& schedule,
                                   std::span<Observer* const> observers = {});

}  // namespace cckp
