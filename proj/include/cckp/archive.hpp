#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "cckp/objectives.hpp"
#include "cckp/solution.hpp"

namespace cckp {

struct Member {
  Solution solution;
  ObjectiveVector objectives;
};

enum class InsertOutcome {
  Inserted,   ///< added; every member it weakly dominated was dropped
  Dominated,  ///< some member strongly dominates the candidate
  Duplicate,  ///< a member with the same bit vector is already present
};

/// Set of mutually non-dominated solutions.
///
/// Insertion follows the GSEMO rule: a candidate strongly dominated by any
/// member is rejected, otherwise it enters and evicts every member it weakly
/// dominates (including members with an identical objective vector). A
/// candidate whose bit vector is already present is rejected.
///
/// Members are kept ordered by solution weight (ties in insertion order) so
/// that weight windows can be located by binary search. Objective columns are
/// stored separately for the dominance scans.
class Archive {
 public:
  explicit Archive(std::size_t arity);

  InsertOutcome insert(Solution candidate, const ObjectiveVector& objectives);

  std::size_t arity() const { return arity_; }
  std::size_t size() const { return solutions_.size(); }
  bool empty() const { return solutions_.empty(); }

  const Solution& solution(std::size_t i) const { return solutions_[i]; }
  ObjectiveVector objectives(std::size_t i) const;
  std::int64_t weight(std::size_t i) const { return weights_[i]; }

  std::vector<Member> members() const;

  /// Index range [first, last) of members whose weight lies in [lo, hi].
  std::pair<std::size_t, std::size_t> weight_range(std::int64_t lo, std::int64_t hi) const;

  /// Removes the members with weight in [lo, hi] and returns them in order.
  std::vector<Member> extract_weight_range(std::int64_t lo, std::int64_t hi);

  /// Exhaustive pairwise check: no member strongly dominates another and no
  /// two members share a bit vector.
  bool audit() const;

 private:
  std::size_t arity_;
  std::vector<Solution> solutions_;
  std::vector<std::int64_t> weights_;
  std::vector<double> profit_;
  std::vector<double> variance_;
  std::vector<double> weight_objective_;
};

/// Read-only union of one or two archives, indexed first archive first.
class PopulationView {
 public:
  explicit PopulationView(const Archive& first) : first_(&first) {}
  PopulationView(const Archive& first, const Archive& second) : first_(&first), second_(&second) {}

  std::size_t size() const { return first_->size() + (second_ ? second_->size() : 0); }
  const Solution& solution(std::size_t i) const;

  std::size_t count_in_window(std::int64_t lo, std::int64_t hi) const;
  /// k-th member (0-based) among those with weight in [lo, hi].
  const Solution& solution_in_window(std::int64_t lo, std::int64_t hi, std::size_t k) const;

 private:
  const Archive* first_;
  const Archive* second_ = nullptr;
};

}  // namespace cckp
