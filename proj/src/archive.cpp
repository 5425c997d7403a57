#include "cckp/archive.hpp"

#include <algorithm>
#include <stdexcept>

namespace cckp {

Archive::Archive(std::size_t arity) : arity_(arity) {
  if (arity != 2 && arity != 3) throw std::invalid_argument("archive arity must be 2 or 3");
}

ObjectiveVector Archive::objectives(std::size_t i) const {
  if (arity_ == 2) return {profit_[i], variance_[i]};
  return {profit_[i], variance_[i], weight_objective_[i]};
}

InsertOutcome Archive::insert(Solution candidate, const ObjectiveVector& objectives) {
  if (objectives.arity() != arity_)
    throw std::invalid_argument("objective arity does not match archive");
  const double fp = objectives.profit();
  const double fv = objectives.variance();
  const double fw = objectives.weight();
  const std::size_t n = solutions_.size();

  for (std::size_t i = 0; i < n; ++i) {
    if (profit_[i] >= fp && variance_[i] <= fv && weight_objective_[i] <= fw) {
      if (profit_[i] != fp || variance_[i] != fv || weight_objective_[i] != fw)
        return InsertOutcome::Dominated;
      if (solutions_[i] == candidate) return InsertOutcome::Duplicate;
    }
  }

  std::size_t out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool evicted = fp >= profit_[i] && fv <= variance_[i] && fw <= weight_objective_[i];
    if (evicted) continue;
    if (out != i) {
      solutions_[out] = std::move(solutions_[i]);
      weights_[out] = weights_[i];
      profit_[out] = profit_[i];
      variance_[out] = variance_[i];
      weight_objective_[out] = weight_objective_[i];
    }
    ++out;
  }
  solutions_.resize(out, Solution(0));
  weights_.resize(out);
  profit_.resize(out);
  variance_.resize(out);
  weight_objective_.resize(out);

  const std::int64_t w = candidate.weight();
  const auto pos = static_cast<std::size_t>(
      std::upper_bound(weights_.begin(), weights_.end(), w) - weights_.begin());
  const auto at = [pos](auto& column) { return column.begin() + static_cast<std::ptrdiff_t>(pos); };
  solutions_.insert(at(solutions_), std::move(candidate));
  weights_.insert(at(weights_), w);
  profit_.insert(at(profit_), fp);
  variance_.insert(at(variance_), fv);
  weight_objective_.insert(at(weight_objective_), fw);
  return InsertOutcome::Inserted;
}

std::vector<Member> Archive::members() const {
  std::vector<Member> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back({solutions_[i], objectives(i)});
  return out;
}

std::pair<std::size_t, std::size_t> Archive::weight_range(std::int64_t lo, std::int64_t hi) const {
  if (lo > hi) return {0, 0};
  const auto first = std::lower_bound(weights_.begin(), weights_.end(), lo);
  const auto last = std::upper_bound(first, weights_.end(), hi);
  return {static_cast<std::size_t>(first - weights_.begin()),
          static_cast<std::size_t>(last - weights_.begin())};
}

std::vector<Member> Archive::extract_weight_range(std::int64_t lo, std::int64_t hi) {
  const auto [first, last] = weight_range(lo, hi);
  std::vector<Member> taken;
  taken.reserve(last - first);
  for (std::size_t i = first; i < last; ++i) {
    ObjectiveVector f = objectives(i);
    taken.push_back({std::move(solutions_[i]), f});
  }
  const auto a = static_cast<std::ptrdiff_t>(first);
  const auto b = static_cast<std::ptrdiff_t>(last);
  solutions_.erase(solutions_.begin() + a, solutions_.begin() + b);
  weights_.erase(weights_.begin() + a, weights_.begin() + b);
  profit_.erase(profit_.begin() + a, profit_.begin() + b);
  variance_.erase(variance_.begin() + a, variance_.begin() + b);
  weight_objective_.erase(weight_objective_.begin() + a, weight_objective_.begin() + b);
  return taken;
}

bool Archive::audit() const {
  for (std::size_t i = 0; i < size(); ++i) {
    const ObjectiveVector a = objectives(i);
    for (std::size_t j = 0; j < size(); ++j) {
      if (i == j) continue;
      if (dominates_strong(a, objectives(j))) return false;
      if (solutions_[i] == solutions_[j]) return false;
    }
  }
  return std::is_sorted(weights_.begin(), weights_.end());
}

const Solution& PopulationView::solution(std::size_t i) const {
  if (i < first_->size()) return first_->solution(i);
  return second_->solution(i - first_->size());
}

std::size_t PopulationView::count_in_window(std::int64_t lo, std::int64_t hi) const {
  auto [a0, a1] = first_->weight_range(lo, hi);
  std::size_t count = a1 - a0;
  if (second_) {
    auto [b0, b1] = second_->weight_range(lo, hi);
    count += b1 - b0;
  }
  return count;
}

const Solution& PopulationView::solution_in_window(std::int64_t lo, std::int64_t hi,
                                                   std::size_t k) const {
  auto [a0, a1] = first_->weight_range(lo, hi);
  if (k < a1 - a0) return first_->solution(a0 + k);
  k -= a1 - a0;
  if (second_) {
    auto [b0, b1] = second_->weight_range(lo, hi);
    if (k < b1 - b0) return second_->solution(b0 + k);
  }
  throw std::out_of_range("window index out of range");
}

}  // namespace cckp
