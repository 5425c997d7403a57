#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "cckp/instance.hpp"
#include "cckp/objectives.hpp"
#include "cckp/profit_model.hpp"

namespace cckp {

/// Default limit on DP table cells (one 64-bit entry per capacity).
inline constexpr std::size_t kDefaultTableCellLimit = std::size_t{1} << 27;

/// Best expected profit of the deterministic 0/1 knapsack for every capacity
/// in [0, covered()]. Capacities at or beyond the total weight all map to the
/// total profit, so the table never grows past that.
class OptimumTable {
 public:
  OptimumTable(const KnapsackInstance& instance, std::int64_t max_capacity,
               std::size_t cell_limit = kDefaultTableCellLimit);

  /// Throws std::out_of_range for capacities the table does not cover.
  std::int64_t at(std::int64_t capacity) const;
  bool covers(std::int64_t capacity) const;
  std::int64_t covered() const { return static_cast<std::int64_t>(best_.size()) - 1; }

  /// Rebuilds the table so that it covers `capacity`. No-op if it already does.
  void extend_to(std::int64_t capacity);

 private:
  void build(std::int64_t max_capacity);

  std::vector<Item> items_;
  std::int64_t total_weight_;
  std::size_t cell_limit_;
  std::vector<std::int64_t> best_;
};

/// max sum mu_i x_i subject to sum w_i x_i <= capacity.
std::int64_t deterministic_optimum(const KnapsackInstance& instance, std::int64_t capacity,
                                   std::size_t cell_limit = kDefaultTableCellLimit);

/// One DP sweep answering every queried capacity.
std::map<std::int64_t, std::int64_t> optimum_for_bounds(const KnapsackInstance& instance,
                                                        std::span<const std::int64_t> bounds,
                                                        std::size_t cell_limit = kDefaultTableCellLimit);

inline constexpr std::size_t kBruteForceBestMaxItems = 24;
inline constexpr std::size_t kBruteForceParetoMaxItems = 20;

/// Exhaustive maximum of the chosen estimate over all subsets with weight <= capacity.
double brute_force_best(const KnapsackInstance& instance, std::int64_t capacity, double alpha,
                        Estimator estimator);

/// Exact non-dominated set of objective vectors over all 2^n bit vectors,
/// best profit first.
std::vector<ObjectiveVector> brute_force_pareto(const KnapsackInstance& instance,
                                                const FitnessFormulation& formulation,
                                                std::int64_t bound);

}  // namespace cckp
