#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cckp/archive.hpp"
#include "cckp/evolver.hpp"
#include "cckp/instance.hpp"
#include "cckp/objectives.hpp"
#include "cckp/solution.hpp"

namespace cckp::support {

inline KnapsackInstance make_instance(const std::vector<std::int64_t>& weights,
                                      const std::vector<std::int64_t>& profits,
                                      std::int64_t capacity, double dispersion = 0.0) {
  std::vector<Item> items;
  for (std::size_t i = 0; i < weights.size(); ++i) items.push_back({i, weights[i], profits[i]});
  return KnapsackInstance(std::move(items), capacity, dispersion,
                          CorrelationClass::Uncorrelated, "test");
}

/// Small uncorrelated instance with capacity about half the total weight.
inline KnapsackInstance random_instance(std::size_t n, std::uint64_t seed,
                                        std::int64_t range = 100, double dispersion = 10.0) {
  GeneratorOptions opts;
  opts.dispersion = dispersion;
  return generate_uncorrelated(n, seed, range, opts);
}

inline Solution solution_from_mask(const KnapsackInstance& inst, std::uint64_t mask) {
  Solution x(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i)
    if ((mask >> i) & 1U) x.flip(i, inst);
  return x;
}

inline Solution random_solution(const KnapsackInstance& inst, std::mt19937_64& gen) {
  Solution x(inst.size());
  for (std::size_t i = 0; i < inst.size(); ++i)
    if (gen() & 1U) x.flip(i, inst);
  return x;
}

/// Straightforward list implementation of the GSEMO archive rule.
class ReferenceArchive {
 public:
  InsertOutcome insert(const Solution& x, const ObjectiveVector& f) {
    for (const Member& m : members_)
      if (dominates_strong(m.objectives, f)) return InsertOutcome::Dominated;
    for (const Member& m : members_)
      if (m.solution == x) return InsertOutcome::Duplicate;
    std::vector<Member> kept;
    for (Member& m : members_)
      if (!dominates_weak(f, m.objectives)) kept.push_back(std::move(m));
    kept.push_back({x, f});
    members_ = std::move(kept);
    return InsertOutcome::Inserted;
  }

  const std::vector<Member>& members() const { return members_; }

 private:
  std::vector<Member> members_;
};

/// Observer that keeps every offspring with its objective vector.
class RecordingObserver : public Observer {
 public:
  void on_step(const StepEvent& e) override {
    offspring.push_back(e.offspring);
    objectives.push_back(e.objectives);
    outcomes.push_back(e.outcome);
  }

  std::vector<Solution> offspring;
  std::vector<ObjectiveVector> objectives;
  std::vector<InsertOutcome> outcomes;
};

/// Members as sorted (bits, objectives) pairs for order-free comparison.
inline std::vector<std::pair<std::string, std::vector<double>>> canonical(
    const std::vector<Member>& members) {
  std::vector<std::pair<std::string, std::vector<double>>> out;
  for (const Member& m : members)
    out.push_back({m.solution.to_bitstring(),
                   {m.objectives.profit(), m.objectives.variance(), m.objectives.weight()}});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cckp::support
