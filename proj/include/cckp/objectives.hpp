#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

#include "cckp/instance.hpp"
#include "cckp/solution.hpp"

namespace cckp {

enum class Sense { Maximize, Minimize };

/// Objective values in fixed positions: 0 profit (maximize), 1 variance
/// (minimize), and optionally 2 weight (minimize).
class ObjectiveVector {
 public:
  ObjectiveVector(double profit, double variance) : values_{profit, variance, 0.0}, arity_(2) {}
  ObjectiveVector(double profit, double variance, double weight)
      : values_{profit, variance, weight}, arity_(3) {}

  std::size_t arity() const { return arity_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double profit() const { return values_[0]; }
  double variance() const { return values_[1]; }
  /// Third component; only meaningful when arity() == 3.
  double weight() const { return values_[2]; }

  static constexpr Sense sense(std::size_t position) {
    return position == 0 ? Sense::Maximize : Sense::Minimize;
  }

  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;

 private:
  std::array<double, 3> values_;
  std::size_t arity_;
};

/// a is no worse than b in every position. Throws on arity mismatch.
bool dominates_weak(const ObjectiveVector& a, const ObjectiveVector& b);
/// Weak dominance with at least one strictly better position.
bool dominates_strong(const ObjectiveVector& a, const ObjectiveVector& b);

namespace detail {
// Unchecked versions for callers that guarantee equal arity.
inline bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.profit() >= b.profit() && a.variance() <= b.variance() && a.weight() <= b.weight();
}
inline bool strongly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return weakly_dominates(a, b) && !(a == b);
}
}  // namespace detail

ObjectiveVector eval_static_2d(const Solution& x, const KnapsackInstance& instance,
                               std::int64_t capacity);
ObjectiveVector eval_static_3d(const Solution& x, const KnapsackInstance& instance,
                               std::int64_t capacity);
/// Solutions up to `bound + gamma` are scored normally; heavier ones get
/// (|bound - w(x)|, v_max).
ObjectiveVector eval_dyn_2d(const Solution& x, const KnapsackInstance& instance,
                            std::int64_t bound, std::int64_t gamma);
ObjectiveVector eval_dyn_3d(const Solution& x, const KnapsackInstance& instance,
                            std::int64_t bound, std::int64_t gamma);

enum class FormulationKind { Static2D, Static3D, Dyn2D, Dyn3D };

std::string_view to_string(FormulationKind kind);

class FitnessFormulation {
 public:
  /// `gamma` must be given exactly for the dynamic kinds.
  explicit FitnessFormulation(FormulationKind kind, std::optional<std::int64_t> gamma = {});

  static FitnessFormulation make(bool dynamic, int objectives, std::int64_t gamma = 0);

  FormulationKind kind() const { return kind_; }
  bool is_dynamic() const { return kind_ == FormulationKind::Dyn2D || kind_ == FormulationKind::Dyn3D; }
  std::size_t arity() const {
    return kind_ == FormulationKind::Static2D || kind_ == FormulationKind::Dyn2D ? 2 : 3;
  }
  std::int64_t gamma() const { return gamma_.value_or(0); }

  ObjectiveVector evaluate(const Solution& x, const KnapsackInstance& instance,
                           std::int64_t bound) const;

 private:
  FormulationKind kind_;
  std::optional<std::int64_t> gamma_;
};

}  // namespace cckp
