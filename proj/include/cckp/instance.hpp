#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cckp {

enum class CorrelationClass { Uncorrelated, BoundedStronglyCorrelated };

std::string_view to_string(CorrelationClass c);
CorrelationClass correlation_class_from_string(std::string_view s);

struct Item {
  std::size_t id = 0;
  std::int64_t weight = 0;
  std::int64_t expected_profit = 0;

  friend bool operator==(const Item&, const Item&) = default;
};

/// Knapsack instance with deterministic weights and uniformly distributed
/// profits p_i ~ U[mu_i - dispersion, mu_i + dispersion].
///
/// Immutable once constructed; the constructor enforces every invariant
/// (n >= 1, positive weights and profits, 1 <= capacity < total weight,
/// dispersion >= 0) and throws std::invalid_argument otherwise.
class KnapsackInstance {
 public:
  KnapsackInstance(std::vector<Item> items, std::int64_t base_capacity, double dispersion,
                   CorrelationClass correlation_class, std::string name);

  std::size_t size() const { return items_.size(); }
  const std::vector<Item>& items() const { return items_; }
  const Item& item(std::size_t i) const { return items_[i]; }
  std::int64_t weight(std::size_t i) const { return items_[i].weight; }
  std::int64_t profit(std::size_t i) const { return items_[i].expected_profit; }

  std::int64_t base_capacity() const { return base_capacity_; }
  double dispersion() const { return dispersion_; }
  CorrelationClass correlation_class() const { return correlation_class_; }
  const std::string& name() const { return name_; }

  /// Variance of a single item's profit, dispersion^2 / 3.
  double item_variance() const { return item_variance_; }
  /// Largest possible solution variance, n * dispersion^2 / 3.
  double max_variance() const { return item_variance_ * static_cast<double>(items_.size()); }
  std::int64_t total_weight() const { return total_weight_; }
  std::int64_t total_profit() const { return total_profit_; }
  double average_weight() const {
    return static_cast<double>(total_weight_) / static_cast<double>(items_.size());
  }

  KnapsackInstance with_dispersion(double dispersion) const;
  KnapsackInstance with_capacity(std::int64_t capacity) const;
  KnapsackInstance with_name(std::string name) const;

  friend bool operator==(const KnapsackInstance& a, const KnapsackInstance& b) {
    return a.items_ == b.items_ && a.base_capacity_ == b.base_capacity_ &&
           a.dispersion_ == b.dispersion_ && a.correlation_class_ == b.correlation_class_ &&
           a.name_ == b.name_;
  }

 private:
  std::vector<Item> items_;
  std::int64_t base_capacity_;
  double dispersion_;
  CorrelationClass correlation_class_;
  std::string name_;
  double item_variance_;
  std::int64_t total_weight_ = 0;
  std::int64_t total_profit_ = 0;
};

/// Parses the text instance format. Throws ParseError naming the offending line.
KnapsackInstance parse_instance(std::string_view text);
std::string serialize_instance(const KnapsackInstance& instance);

KnapsackInstance load_instance(const std::filesystem::path& path);
void save_instance(const KnapsackInstance& instance, const std::filesystem::path& path);

struct GeneratorOptions {
  double dispersion = 25.0;
  /// Capacity = round(capacity_ratio * total weight), halves rounded up.
  double capacity_ratio = 0.5;
  /// Bounded-strongly-correlated only: profits are weight + offset + U[-p, p].
  std::int64_t perturbation = 0;
  /// Empty means a name derived from class, n and seed.
  std::string name;
};

KnapsackInstance generate_uncorrelated(std::size_t n, std::uint64_t seed, std::int64_t range,
                                       const GeneratorOptions& options = {});

KnapsackInstance generate_bounded_strongly_correlated(std::size_t n, std::uint64_t seed,
                                                      std::int64_t range,
                                                      std::int64_t bound_offset,
                                                      const GeneratorOptions& options = {});

}  // namespace cckp
