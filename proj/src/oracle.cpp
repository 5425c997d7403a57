#include "cckp/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cckp/errors.hpp"
#include "cckp/solution.hpp"

namespace cckp {

OptimumTable::OptimumTable(const KnapsackInstance& instance, std::int64_t max_capacity,
                           std::size_t cell_limit)
    : items_(instance.items()), total_weight_(instance.total_weight()), cell_limit_(cell_limit) {
  if (max_capacity < 0) throw std::invalid_argument("capacity must be >= 0");
  build(max_capacity);
}

void OptimumTable::build(std::int64_t max_capacity) {
  const std::int64_t top = std::min(max_capacity, total_weight_);
  const auto cells = static_cast<std::size_t>(top) + 1;
  if (cells > cell_limit_)
    throw ResourceError("DP table of " + std::to_string(cells) + " cells exceeds the limit of " +
                        std::to_string(cell_limit_));
  best_.assign(cells, 0);
  for (const Item& it : items_) {
    for (std::int64_t c = top; c >= it.weight; --c) {
      const auto idx = static_cast<std::size_t>(c);
      best_[idx] = std::max(best_[idx], best_[idx - static_cast<std::size_t>(it.weight)] +
                                            it.expected_profit);
    }
  }
}

bool OptimumTable::covers(std::int64_t capacity) const {
  return capacity >= 0 && (capacity <= covered() || covered() == total_weight_);
}

std::int64_t OptimumTable::at(std::int64_t capacity) const {
  if (capacity < 0) throw std::out_of_range("negative capacity");
  if (capacity <= covered()) return best_[static_cast<std::size_t>(capacity)];
  if (covered() == total_weight_) return best_.back();
  throw std::out_of_range("capacity " + std::to_string(capacity) + " beyond table");
}

void OptimumTable::extend_to(std::int64_t capacity) {
  if (!covers(capacity)) build(capacity);
}

std::int64_t deterministic_optimum(const KnapsackInstance& instance, std::int64_t capacity,
                                   std::size_t cell_limit) {
  return OptimumTable(instance, capacity, cell_limit).at(capacity);
}

std::map<std::int64_t, std::int64_t> optimum_for_bounds(const KnapsackInstance& instance,
                                                        std::span<const std::int64_t> bounds,
                                                        std::size_t cell_limit) {
  std::map<std::int64_t, std::int64_t> out;
  if (bounds.empty()) return out;
  const std::int64_t top = *std::max_element(bounds.begin(), bounds.end());
  if (*std::min_element(bounds.begin(), bounds.end()) < 0)
    throw std::invalid_argument("capacity must be >= 0");
  const OptimumTable table(instance, top, cell_limit);
  for (std::int64_t b : bounds) out.emplace(b, table.at(b));
  return out;
}

namespace {

/// Visits every subset in Gray-code order, flipping one item per step.
template <class Visit>
void for_each_subset(const KnapsackInstance& instance, Visit visit) {
  const std::size_t n = instance.size();
  Solution x(n);
  visit(x);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    x.flip(static_cast<std::size_t>(__builtin_ctzll(k)), instance);
    visit(x);
  }
}

}  // namespace

double brute_force_best(const KnapsackInstance& instance, std::int64_t capacity, double alpha,
                        Estimator estimator) {
  if (instance.size() > kBruteForceBestMaxItems)
    throw ResourceError("brute_force_best supports at most " +
                        std::to_string(kBruteForceBestMaxItems) + " items");
  check_alpha(estimator, alpha);
  double best = 0.0;  // the empty selection is always feasible
  for_each_subset(instance, [&](const Solution& x) {
    if (x.weight() <= capacity)
      best = std::max(best, profit_estimate(estimator, x, instance, alpha));
  });
  return best;
}

std::vector<ObjectiveVector> brute_force_pareto(const KnapsackInstance& instance,
                                                const FitnessFormulation& formulation,
                                                std::int64_t bound) {
  if (instance.size() > kBruteForceParetoMaxItems)
    throw ResourceError("brute_force_pareto supports at most " +
                        std::to_string(kBruteForceParetoMaxItems) + " items");
  std::vector<ObjectiveVector> all;
  all.reserve(std::size_t{1} << instance.size());
  for_each_subset(instance,
                  [&](const Solution& x) { all.push_back(formulation.evaluate(x, instance, bound)); });

  // Best-first order (profit descending, then variance and weight ascending):
  // any strong dominator of v precedes v, so checking against the front
  // collected so far is enough.
  auto better_first = [](const ObjectiveVector& a, const ObjectiveVector& b) {
    if (a.profit() != b.profit()) return a.profit() > b.profit();
    if (a.variance() != b.variance()) return a.variance() < b.variance();
    return a.weight() < b.weight();
  };
  std::sort(all.begin(), all.end(), better_first);
  all.erase(std::unique(all.begin(), all.end()), all.end());

  std::vector<ObjectiveVector> front;
  for (const ObjectiveVector& v : all) {
    const bool dominated = std::any_of(front.begin(), front.end(), [&](const ObjectiveVector& u) {
      return detail::strongly_dominates(u, v);
    });
    if (!dominated) front.push_back(v);
  }
  return front;
}

}  // namespace cckp
