#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cckp/instance.hpp"

namespace cckp {

/// Bit-vector selection of items with cached weight, expected profit and
/// cardinality. Every mutation goes through flip(), which keeps the caches
/// exact; the variance is derived from the cardinality.
class Solution {
 public:
  /// The empty selection over n items.
  explicit Solution(std::size_t n);

  static Solution from_bits(const KnapsackInstance& instance, std::span<const bool> bits);
  /// Inverse of to_hex(); `n` fixes the length.
  static Solution from_hex(const KnapsackInstance& instance, std::string_view hex);

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void flip(std::size_t i, const KnapsackInstance& instance);

  std::int64_t weight() const { return weight_; }
  std::int64_t expectation() const { return expectation_; }
  std::size_t cardinality() const { return cardinality_; }

  std::span<const std::uint64_t> words() const { return words_; }

  /// Hex digits, four items per digit, item 4k in the high bit of digit k.
  std::string to_hex() const;
  std::string to_bitstring() const;

  /// Recomputes weight, expectation and cardinality from the bits.
  bool caches_consistent(const KnapsackInstance& instance) const;

  friend bool operator==(const Solution& a, const Solution& b) {
    return a.size_ == b.size_ && a.words_ == b.words_;
  }

  /// Lexicographic order on (x_0, x_1, ..., x_{n-1}).
  friend std::strong_ordering operator<=>(const Solution& a, const Solution& b);

 private:
  std::size_t size_;
  std::vector<std::uint64_t> words_;
  std::int64_t weight_ = 0;
  std::int64_t expectation_ = 0;
  std::size_t cardinality_ = 0;
};

struct SolutionHash {
  std::size_t operator()(const Solution& s) const;
};

}  // namespace cckp
