#include "cckp/objectives.hpp"

#include <cstdlib>
#include <stdexcept>

namespace cckp {

bool dominates_weak(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("objective vectors differ in arity");
  return detail::weakly_dominates(a, b);
}

bool dominates_strong(const ObjectiveVector& a, const ObjectiveVector& b) {
  if (a.arity() != b.arity()) throw std::invalid_argument("objective vectors differ in arity");
  return detail::strongly_dominates(a, b);
}

namespace {

double variance_of(const Solution& x, const KnapsackInstance& instance) {
  return static_cast<double>(x.cardinality()) * instance.item_variance();
}

void check_size(const Solution& x, const KnapsackInstance& instance) {
  if (x.size() != instance.size())
    throw std::invalid_argument("solution length does not match instance size");
}

}  // namespace

ObjectiveVector eval_static_2d(const Solution& x, const KnapsackInstance& instance,
                               std::int64_t capacity) {
  check_size(x, instance);
  if (x.weight() <= capacity)
    return {static_cast<double>(x.expectation()), variance_of(x, instance)};
  return {static_cast<double>(capacity - x.weight()), instance.max_variance()};
}

ObjectiveVector eval_static_3d(const Solution& x, const KnapsackInstance& instance,
                               std::int64_t capacity) {
  check_size(x, instance);
  if (x.weight() <= capacity)
    return {static_cast<double>(x.expectation()), variance_of(x, instance),
            static_cast<double>(x.weight())};
  return {static_cast<double>(capacity - x.weight()), instance.max_variance(),
          static_cast<double>(instance.total_weight())};
}

ObjectiveVector eval_dyn_2d(const Solution& x, const KnapsackInstance& instance,
                            std::int64_t bound, std::int64_t gamma) {
  check_size(x, instance);
  if (gamma < 0) throw std::invalid_argument("gamma must be >= 0");
  if (x.weight() <= bound + gamma)
    return {static_cast<double>(x.expectation()), variance_of(x, instance)};
  return {static_cast<double>(std::abs(bound - x.weight())), instance.max_variance()};
}

ObjectiveVector eval_dyn_3d(const Solution& x, const KnapsackInstance& instance,
                            std::int64_t bound, std::int64_t gamma) {
  check_size(x, instance);
  if (gamma < 0) throw std::invalid_argument("gamma must be >= 0");
  if (x.weight() <= bound + gamma)
    return {static_cast<double>(x.expectation()), variance_of(x, instance),
            static_cast<double>(x.weight())};
  return {static_cast<double>(std::abs(bound - x.weight())), instance.max_variance(),
          static_cast<double>(instance.total_weight())};
}

std::string_view to_string(FormulationKind kind) {
  switch (kind) {
    case FormulationKind::Static2D: return "static-2d";
    case FormulationKind::Static3D: return "static-3d";
    case FormulationKind::Dyn2D: return "dyn-2d";
    case FormulationKind::Dyn3D: return "dyn-3d";
  }
  return "?";
}

FitnessFormulation::FitnessFormulation(FormulationKind kind, std::optional<std::int64_t> gamma)
    : kind_(kind), gamma_(gamma) {
  if (is_dynamic() != gamma_.has_value())
    throw std::invalid_argument("gamma must be given for dynamic formulations only");
  if (gamma_ && *gamma_ < 0) throw std::invalid_argument("gamma must be >= 0");
}

FitnessFormulation FitnessFormulation::make(bool dynamic, int objectives, std::int64_t gamma) {
  if (objectives != 2 && objectives != 3)
    throw std::invalid_argument("objective count must be 2 or 3");
  if (!dynamic)
    return FitnessFormulation(objectives == 2 ? FormulationKind::Static2D
                                              : FormulationKind::Static3D);
  return FitnessFormulation(objectives == 2 ? FormulationKind::Dyn2D : FormulationKind::Dyn3D,
                            gamma);
}

ObjectiveVector FitnessFormulation::evaluate(const Solution& x, const KnapsackInstance& instance,
                                             std::int64_t bound) const {
  switch (kind_) {
    case FormulationKind::Static2D: return eval_static_2d(x, instance, bound);
    case FormulationKind::Static3D: return eval_static_3d(x, instance, bound);
    case FormulationKind::Dyn2D: return eval_dyn_2d(x, instance, bound, *gamma_);
    case FormulationKind::Dyn3D: return eval_dyn_3d(x, instance, bound, *gamma_);
  }
  throw std::logic_error("unreachable formulation kind");
}

}  // namespace cckp
