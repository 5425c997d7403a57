#include "cckp/profit_model.hpp"

#include <string>

namespace cckp {

std::string_view to_string(Estimator e) { return e == Estimator::Cheb ? "cheb" : "hoef"; }

Estimator estimator_from_string(std::string_view s) {
  if (s == "cheb") return Estimator::Cheb;
  if (s == "hoef") return Estimator::Hoef;
  throw std::invalid_argument("unknown estimator '" + std::string(s) + "'");
}

void check_alpha(Estimator estimator, double alpha) {
  const double upper = estimator == Estimator::Cheb ? 0.5 : 1.0;
  if (!(alpha > 0.0 && alpha < upper))
    throw std::invalid_argument("alpha " + std::to_string(alpha) + " outside (0, " +
                                (estimator == Estimator::Cheb ? "0.5" : "1") + ")");
}

double expected_profit(const Solution& x, const KnapsackInstance& instance) {
  if (x.size() != instance.size())
    throw std::invalid_argument("solution length does not match instance size");
  return static_cast<double>(x.expectation());
}

double profit_variance(const Solution& x, double dispersion) {
  if (!(dispersion >= 0.0)) throw std::invalid_argument("dispersion must be >= 0");
  return static_cast<double>(x.cardinality()) * (dispersion * dispersion / 3.0);
}

double cheb_estimate(double mean, double variance, double alpha) {
  return mean - std::sqrt((1.0 - alpha) / alpha) * std::sqrt(variance);
}

double hoef_estimate(double mean, std::size_t cardinality, double dispersion, double alpha) {
  return mean -
         dispersion * std::sqrt(std::log(1.0 / alpha) * 2.0 * static_cast<double>(cardinality));
}

double profit_cheb(const Solution& x, const KnapsackInstance& instance, double alpha) {
  check_alpha(Estimator::Cheb, alpha);
  return cheb_estimate(expected_profit(x, instance), profit_variance(x, instance.dispersion()),
                       alpha);
}

double profit_hoef(const Solution& x, const KnapsackInstance& instance, double alpha) {
  check_alpha(Estimator::Hoef, alpha);
  return hoef_estimate(expected_profit(x, instance), x.cardinality(), instance.dispersion(),
                       alpha);
}

double profit_estimate(Estimator estimator, const Solution& x, const KnapsackInstance& instance,
                       double alpha) {
  return estimator == Estimator::Cheb ? profit_cheb(x, instance, alpha)
                                      : profit_hoef(x, instance, alpha);
}

}  // namespace cckp
