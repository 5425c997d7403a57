#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string_view>

#include "cckp/instance.hpp"
#include "cckp/solution.hpp"

namespace cckp {

enum class Estimator { Cheb, Hoef };

std::string_view to_string(Estimator e);
Estimator estimator_from_string(std::string_view s);

/// mu(x): sum of expected profits of the selected items.
double expected_profit(const Solution& x, const KnapsackInstance& instance);

/// v(x) = |x|_1 * dispersion^2 / 3.
double profit_variance(const Solution& x, double dispersion);

// Scalar forms. They take the sufficient statistics directly and are what the
// evolver and metrics call in their inner loops.

/// mu - sqrt((1 - alpha) / alpha) * sqrt(v); requires 0 < alpha < 0.5.
double cheb_estimate(double mean, double variance, double alpha);

/// mu - dispersion * sqrt(2 * |x|_1 * ln(1 / alpha)); requires 0 < alpha < 1.
double hoef_estimate(double mean, std::size_t cardinality, double dispersion, double alpha);

/// Lower profit bound that holds with probability at least 1 - alpha (Chebyshev).
double profit_cheb(const Solution& x, const KnapsackInstance& instance, double alpha);

/// Lower profit bound that holds with probability at least 1 - alpha (Hoeffding).
double profit_hoef(const Solution& x, const KnapsackInstance& instance, double alpha);

double profit_estimate(Estimator estimator, const Solution& x, const KnapsackInstance& instance,
                       double alpha);

void check_alpha(Estimator estimator, double alpha);

struct BestProfit {
  std::size_t index = 0;
  double value = 0.0;
};

/// Member of `solutions` maximizing the chosen estimate. Ties go to the
/// lighter solution, then to the lexicographically smaller bit vector.
/// `project` maps an element of the range to a `const Solution&`.
template <class Range, class Project>
BestProfit best_profit(const Range& solutions, const KnapsackInstance& instance, double alpha,
                       Estimator estimator, Project project) {
  check_alpha(estimator, alpha);
  bool found = false;
  BestProfit best;
  const Solution* best_solution = nullptr;
  std::size_t index = 0;
  for (const auto& element : solutions) {
    const Solution& x = project(element);
    const double value = profit_estimate(estimator, x, instance, alpha);
    bool better = !found || value > best.value;
    if (found && value == best.value) {
      if (x.weight() != best_solution->weight()) better = x.weight() < best_solution->weight();
      else better = x < *best_solution;
    }
    if (better) {
      best = {index, value};
      best_solution = &x;
      found = true;
    }
    ++index;
  }
  if (!found) throw std::invalid_argument("best_profit: empty solution set");
  return best;
}

template <class Range>
BestProfit best_profit(const Range& solutions, const KnapsackInstance& instance, double alpha,
                       Estimator estimator) {
  return best_profit(solutions, instance, alpha, estimator,
                     [](const Solution& s) -> const Solution& { return s; });
}

}  // namespace cckp
