#include "cckp/evolver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "cckp/errors.hpp"

namespace cckp {

std::string_view to_string(Selection s) {
  return s == Selection::Uniform ? "uniform" : "sliding";
}

Solution mutate(const Solution& parent, const KnapsackInstance& instance, Rng& rng) {
  const std::size_t n = parent.size();
  if (n == 0) throw std::invalid_argument("cannot mutate an empty bit vector");
  Solution child = parent;
  if (n == 1) {
    child.flip(0, instance);
    return child;
  }
  // Jump straight to the next flipped position: the gap is geometric with
  // success probability 1/n.
  const double log_keep = std::log1p(-1.0 / static_cast<double>(n));
  std::size_t i = 0;
  for (;;) {
    const double u = 1.0 - rng.uniform01();
    const double gap = std::floor(std::log(u) / log_keep);
    if (gap >= static_cast<double>(n - i)) break;
    i += static_cast<std::size_t>(gap);
    child.flip(i, instance);
    if (++i >= n) break;
  }
  return child;
}

const Solution& select_uniform(const PopulationView& population, Rng& rng) {
  if (population.size() == 0) throw std::invalid_argument("cannot select from an empty population");
  return population.solution(static_cast<std::size_t>(rng.below(population.size())));
}

const Solution& select_sliding_window(const PopulationView& population, std::int64_t bound,
                                      std::int64_t t, std::int64_t t_max, double window_length,
                                      Rng& rng) {
  if (population.size() == 0) throw std::invalid_argument("cannot select from an empty population");
  if (t < t_max) {
    const double center = static_cast<double>(t) / static_cast<double>(t_max) *
                          static_cast<double>(bound);
    const auto lo = static_cast<std::int64_t>(std::floor(center));
    const auto hi = static_cast<std::int64_t>(std::ceil(center + window_length));
    const std::size_t count = population.count_in_window(lo, hi);
    if (count > 0)
      return population.solution_in_window(lo, hi, static_cast<std::size_t>(rng.below(count)));
  }
  return select_uniform(population, rng);
}

bool DynamicState::satisfies_bounds(std::int64_t gamma) const {
  for (std::size_t i = 0; i < feasible.size(); ++i)
    if (feasible.weight(i) > bound) return false;
  for (std::size_t i = 0; i < backlog.size(); ++i)
    if (backlog.weight(i) <= bound || backlog.weight(i) > bound + gamma) return false;
  return true;
}

DynamicState repair_populations(DynamicState state, std::int64_t new_bound,
                                const KnapsackInstance& instance,
                                const FitnessFormulation& formulation) {
  if (new_bound == state.bound) return state;
  constexpr auto kMin = std::numeric_limits<std::int64_t>::min();
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  const std::int64_t ceiling = new_bound + formulation.gamma();

  // Members that stay on their side keep their objective vectors and stay
  // mutually non-dominated; only the ones crossing the bound are re-inserted.
  std::vector<Member> to_backlog = state.feasible.extract_weight_range(new_bound + 1, kMax);
  state.backlog.extract_weight_range(ceiling + 1, kMax);
  std::vector<Member> to_feasible = state.backlog.extract_weight_range(kMin, new_bound);
  state.bound = new_bound;

  for (Member& m : to_feasible) {
    const ObjectiveVector f = formulation.evaluate(m.solution, instance, new_bound);
    state.feasible.insert(std::move(m.solution), f);
  }
  for (Member& m : to_backlog) {
    if (m.solution.weight() > ceiling) continue;
    const ObjectiveVector f = formulation.evaluate(m.solution, instance, new_bound);
    state.backlog.insert(std::move(m.solution), f);
  }
  return state;
}

namespace {

void validate(const KnapsackInstance& instance, const EvolverConfig& config) {
  if (config.t_max < 1) throw ConfigError("t_max must be >= 1");
  if (config.selection == Selection::SlidingWindow && !(config.window_length > 0.0))
    throw ConfigError("sliding-window selection needs a positive window length");
  if (instance.size() == 0) throw ConfigError("empty instance");
}

void notify(std::span<Observer* const> observers, const StepEvent& event) {
  for (Observer* o : observers) o->on_step(event);
}

const Solution& select_parent(const EvolverConfig& config, const PopulationView& population,
                              std::int64_t bound, std::int64_t t, Rng& rng) {
  if (config.selection == Selection::Uniform) return select_uniform(population, rng);
  return select_sliding_window(population, bound, t, config.t_max, config.window_length, rng);
}

}  // namespace

StaticRunResult run_gsemo(const KnapsackInstance& instance, const EvolverConfig& config,
                          std::span<Observer* const> observers) {
  validate(instance, config);
  if (config.formulation.is_dynamic())
    throw ConfigError("static run requires a static formulation");

  Rng rng(config.seed);
  const std::int64_t capacity = instance.base_capacity();
  const FitnessFormulation& formulation = config.formulation;
  StaticRunResult result{Archive(formulation.arity()), 0};
  Archive& archive = result.archive;

  {
    Solution empty(instance.size());
    const ObjectiveVector f = formulation.evaluate(empty, instance, capacity);
    const InsertOutcome outcome = archive.insert(empty, f);
    result.evaluations = 1;
    notify(observers, {1, capacity, false, empty, f, Placement::Primary, outcome, archive, nullptr});
  }

  std::int64_t t = 1;
  while (t < config.t_max) {
    const Solution& parent = select_parent(config, PopulationView(archive), capacity, t, rng);
    Solution child = mutate(parent, instance, rng);
    const ObjectiveVector f = formulation.evaluate(child, instance, capacity);
    ++t;
    ++result.evaluations;
    // Infeasible children still go through the archive: the penalty makes
    // them lose to the empty solution, which never leaves.
    if (observers.empty()) {
      archive.insert(std::move(child), f);
      continue;
    }
    const InsertOutcome outcome = archive.insert(child, f);
    notify(observers, {t, capacity, false, child, f, Placement::Primary, outcome, archive, nullptr});
  }
  return result;
}

DynamicRunResult run_gsemo_dynamic(const KnapsackInstance& instance, const EvolverConfig& config,
                                   const BoundSchedule& schedule,
                                   std::span<Observer* const> observers) {
  validate(instance, config);
  const FitnessFormulation& formulation = config.formulation;
  if (!formulation.is_dynamic()) throw ConfigError("dynamic run requires a dynamic formulation");
  if (formulation.gamma() != schedule.magnitude())
    throw ConfigError("formulation gamma " + std::to_string(formulation.gamma()) +
                      " differs from schedule magnitude " + std::to_string(schedule.magnitude()));

  const std::vector<std::int64_t> epochs = schedule.epochs(config.t_max);
  const std::int64_t interval = schedule.interval();
  const std::int64_t gamma = formulation.gamma();
  auto bound_for = [&](std::int64_t t) { return epochs[static_cast<std::size_t>(t / interval)]; };

  Rng rng(config.seed);
  DynamicRunResult result{
      DynamicState{Archive(formulation.arity()), Archive(formulation.arity()), bound_for(1)}, 0,
      0};
  DynamicState& state = result.state;

  auto place = [&](Solution child, const ObjectiveVector& f) {
    if (child.weight() <= state.bound)
      return std::pair{Placement::Primary, state.feasible.insert(std::move(child), f)};
    if (child.weight() <= state.bound + gamma)
      return std::pair{Placement::Backlog, state.backlog.insert(std::move(child), f)};
    return std::pair{Placement::Discarded, InsertOutcome::Dominated};
  };

  {
    Solution empty(instance.size());
    const ObjectiveVector f = formulation.evaluate(empty, instance, state.bound);
    const auto [placement, outcome] = place(empty, f);
    result.evaluations = 1;
    const bool change = interval == 1;
    result.change_points += change ? 1 : 0;
    notify(observers, {1, state.bound, change, empty, f, placement, outcome, state.feasible,
                       &state.backlog});
  }

  std::int64_t t = 1;
  while (t < config.t_max) {
    const std::int64_t next_t = t + 1;
    const bool change = next_t % interval == 0;
    if (change) {
      ++result.change_points;
      state = repair_populations(std::move(state), bound_for(next_t), instance, formulation);
    }
    const std::int64_t window_bound =
        config.window_bound == WindowBound::Current ? state.bound : schedule.initial();
    const Solution& parent = select_parent(
        config, PopulationView(state.feasible, state.backlog), window_bound, t, rng);
    Solution child = mutate(parent, instance, rng);
    const ObjectiveVector f = formulation.evaluate(child, instance, state.bound);
    t = next_t;
    ++result.evaluations;
    if (observers.empty()) {
      place(std::move(child), f);
      continue;
    }
    const Solution kept = child;
    const auto [placement, outcome] = place(std::move(child), f);
    notify(observers, {t, state.bound, change, kept, f, placement, outcome, state.feasible,
                       &state.backlog});
  }
  return result;
}

}  // namespace cckp
