#include "cckp/solution.hpp"

#include <stdexcept>

#include "cckp/rng.hpp"

namespace cckp {

Solution::Solution(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

Solution Solution::from_bits(const KnapsackInstance& instance, std::span<const bool> bits) {
  if (bits.size() != instance.size())
    throw std::invalid_argument("bit vector length does not match instance size");
  Solution s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) s.flip(i, instance);
  return s;
}

Solution Solution::from_hex(const KnapsackInstance& instance, std::string_view hex) {
  const std::size_t n = instance.size();
  if (hex.size() != (n + 3) / 4) throw std::invalid_argument("hex length does not match instance");
  Solution s(n);
  for (std::size_t k = 0; k < hex.size(); ++k) {
    const char c = hex[k];
    unsigned digit;
    if (c >= '0' && c <= '9') digit = static_cast<unsigned>(c - '0');
    else if (c >= 'a' && c <= 'f') digit = static_cast<unsigned>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') digit = static_cast<unsigned>(c - 'A' + 10);
    else throw std::invalid_argument("invalid hex digit");
    for (unsigned b = 0; b < 4; ++b) {
      if (!((digit >> (3 - b)) & 1U)) continue;
      const std::size_t i = 4 * k + b;
      if (i >= n) throw std::invalid_argument("hex sets a bit beyond the instance size");
      s.flip(i, instance);
    }
  }
  return s;
}

void Solution::flip(std::size_t i, const KnapsackInstance& instance) {
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  std::uint64_t& word = words_[i >> 6];
  word ^= mask;
  const Item& it = instance.item(i);
  if (word & mask) {
    weight_ += it.weight;
    expectation_ += it.expected_profit;
    ++cardinality_;
  } else {
    weight_ -= it.weight;
    expectation_ -= it.expected_profit;
    --cardinality_;
  }
}

std::string Solution::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out((size_ + 3) / 4, '0');
  for (std::size_t k = 0; k < out.size(); ++k) {
    unsigned digit = 0;
    for (unsigned b = 0; b < 4; ++b) {
      const std::size_t i = 4 * k + b;
      if (i < size_ && test(i)) digit |= 1U << (3 - b);
    }
    out[k] = kDigits[digit];
  }
  return out;
}

std::string Solution::to_bitstring() const {
  std::string out(size_, '0');
  for (std::size_t i = 0; i < size_; ++i)
    if (test(i)) out[i] = '1';
  return out;
}

bool Solution::caches_consistent(const KnapsackInstance& instance) const {
  if (instance.size() != size_) return false;
  std::int64_t w = 0, p = 0;
  std::size_t c = 0;
  for (std::size_t i = 0; i < size_; ++i) {
    if (!test(i)) continue;
    w += instance.weight(i);
    p += instance.profit(i);
    ++c;
  }
  return w == weight_ && p == expectation_ && c == cardinality_;
}

std::strong_ordering operator<=>(const Solution& a, const Solution& b) {
  if (a.size_ != b.size_) return a.size_ <=> b.size_;
  for (std::size_t k = 0; k < a.words_.size(); ++k) {
    const std::uint64_t diff = a.words_[k] ^ b.words_[k];
    if (diff == 0) continue;
    // Lowest differing item index decides; a 0 there sorts first.
    const std::uint64_t bit = diff & (~diff + 1);
    return (a.words_[k] & bit) ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return std::strong_ordering::equal;
}

std::size_t SolutionHash::operator()(const Solution& s) const {
  std::uint64_t h = s.size();
  for (std::uint64_t w : s.words()) h = mix64(h ^ w);
  return static_cast<std::size_t>(h);
}

}  // namespace cckp
