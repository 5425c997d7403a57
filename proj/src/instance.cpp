#include "cckp/instance.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "cckp/errors.hpp"
#include "cckp/rng.hpp"

namespace cckp {

std::string_view to_string(CorrelationClass c) {
  return c == CorrelationClass::Uncorrelated ? "uncorr" : "strong";
}

CorrelationClass correlation_class_from_string(std::string_view s) {
  if (s == "uncorr") return CorrelationClass::Uncorrelated;
  if (s == "strong") return CorrelationClass::BoundedStronglyCorrelated;
  throw std::invalid_argument("unknown correlation class '" + std::string(s) +
                              "' (expected uncorr or strong)");
}

KnapsackInstance::KnapsackInstance(std::vector<Item> items, std::int64_t base_capacity,
                                   double dispersion, CorrelationClass correlation_class,
                                   std::string name)
    : items_(std::move(items)),
      base_capacity_(base_capacity),
      dispersion_(dispersion),
      correlation_class_(correlation_class),
      name_(std::move(name)),
      item_variance_(dispersion * dispersion / 3.0) {
  if (items_.empty()) throw std::invalid_argument("n must be >= 1");
  if (!(dispersion_ >= 0.0) || !std::isfinite(dispersion_))
    throw std::invalid_argument("dispersion must be a finite non-negative number");
  if (base_capacity_ < 1) throw std::invalid_argument("capacity must be >= 1");
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const Item& it = items_[i];
    if (it.id != i) throw std::invalid_argument("item ids must be 0..n-1 in order");
    if (it.weight < 1) throw std::invalid_argument("item weight must be >= 1");
    if (it.expected_profit < 1) throw std::invalid_argument("item profit must be >= 1");
    total_weight_ += it.weight;
    total_profit_ += it.expected_profit;
  }
  if (base_capacity_ >= total_weight_)
    throw std::invalid_argument("vacuous capacity: capacity must be below the total weight");
}

KnapsackInstance KnapsackInstance::with_dispersion(double dispersion) const {
  return {items_, base_capacity_, dispersion, correlation_class_, name_};
}

KnapsackInstance KnapsackInstance::with_capacity(std::int64_t capacity) const {
  return {items_, capacity, dispersion_, correlation_class_, name_};
}

KnapsackInstance KnapsackInstance::with_name(std::string name) const {
  return {items_, base_capacity_, dispersion_, correlation_class_, std::move(name)};
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    if (pos >= s.size()) break;
    const std::size_t end = s.find_first_of(" \t", pos);
    out.push_back(s.substr(pos, end == std::string_view::npos ? s.npos : end - pos));
    pos = end == std::string_view::npos ? s.size() : end;
  }
  return out;
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

KnapsackInstance parse_instance(std::string_view text) {
  std::optional<std::int64_t> n, capacity;
  std::optional<double> dispersion;
  std::optional<CorrelationClass> cls;
  std::optional<std::string> name;
  std::size_t n_line = 0, capacity_line = 0;
  std::vector<Item> items;
  std::size_t line_no = 0;
  std::size_t last_line = 0;

  auto set_once = [&](auto& slot, auto value, std::string_view key) {
    if (slot) throw ParseError(line_no, "duplicate header key '" + std::string(key) + "'");
    if (!items.empty())
      throw ParseError(line_no, "header key '" + std::string(key) + "' after item lines");
    slot = value;
  };

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    last_line = line_no;

    const auto tokens = split_spaces(line);
    const std::string_view key = tokens.front();
    if (key == "n" || key == "capacity") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected '" + std::string(key) + " <int>'");
      auto v = parse_number<std::int64_t>(tokens[1]);
      if (!v) throw ParseError(line_no, "invalid integer '" + std::string(tokens[1]) + "'");
      if (key == "n") {
        set_once(n, *v, key);
        n_line = line_no;
      } else {
        set_once(capacity, *v, key);
        capacity_line = line_no;
      }
    } else if (key == "dispersion") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected 'dispersion <decimal>'");
      auto v = parse_number<double>(tokens[1]);
      if (!v || !(*v >= 0.0) || !std::isfinite(*v))
        throw ParseError(line_no, "invalid dispersion '" + std::string(tokens[1]) + "'");
      set_once(dispersion, *v, key);
    } else if (key == "class") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected 'class <uncorr|strong>'");
      try {
        set_once(cls, correlation_class_from_string(tokens[1]), key);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
      }
    } else if (key == "name") {
      const std::string_view rest = trim(line.substr(key.size()));
      if (rest.empty()) throw ParseError(line_no, "empty name");
      set_once(name, std::string(rest), key);
    } else {
      if (tokens.size() != 3)
        throw ParseError(line_no, "malformed item line (expected '<id> <profit> <weight>')");
      auto id = parse_number<std::int64_t>(tokens[0]);
      auto profit = parse_number<std::int64_t>(tokens[1]);
      auto weight = parse_number<std::int64_t>(tokens[2]);
      if (!id || !profit || !weight) throw ParseError(line_no, "malformed item line");
      if (*id != static_cast<std::int64_t>(items.size()))
        throw ParseError(line_no, "item id " + std::to_string(*id) + " out of order (expected " +
                                      std::to_string(items.size()) + ")");
      if (*profit < 1) throw ParseError(line_no, "item profit must be >= 1");
      if (*weight < 1) throw ParseError(line_no, "item weight must be >= 1");
      items.push_back({items.size(), *weight, *profit});
    }
  }

  if (!n) throw ParseError(last_line, "missing header 'n'");
  if (*n < 1) throw ParseError(n_line, "n must be >= 1");
  if (!capacity) throw ParseError(last_line, "missing header 'capacity'");
  if (static_cast<std::int64_t>(items.size()) != *n)
    throw ParseError(last_line, "expected " + std::to_string(*n) + " items, found " +
                                    std::to_string(items.size()));
  if (*capacity < 1) throw ParseError(capacity_line, "capacity must be >= 1");
  std::int64_t total = 0;
  for (const Item& it : items) total += it.weight;
  if (*capacity >= total)
    throw ParseError(capacity_line, "vacuous capacity: capacity " + std::to_string(*capacity) +
                                        " >= total weight " + std::to_string(total));

  return {std::move(items), *capacity, dispersion.value_or(0.0),
          cls.value_or(CorrelationClass::Uncorrelated), name.value_or("instance")};
}

std::string serialize_instance(const KnapsackInstance& instance) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), instance.dispersion());
  std::string out;
  out += "n " + std::to_string(instance.size()) + "\n";
  out += "capacity " + std::to_string(instance.base_capacity()) + "\n";
  out += "dispersion " + std::string(buf.data(), end) + "\n";
  out += "class " + std::string(to_string(instance.correlation_class())) + "\n";
  out += "name " + instance.name() + "\n";
  for (const Item& it : instance.items()) {
    out += std::to_string(it.id) + ' ' + std::to_string(it.expected_profit) + ' ' +
           std::to_string(it.weight) + '\n';
  }
  return out;
}

KnapsackInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

void save_instance(const KnapsackInstance& instance, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write instance file " + path.string());
  out << serialize_instance(instance);
}

namespace {

constexpr int kMaxGeneratorAttempts = 1000;

void check_generator_args(std::size_t n, std::int64_t range, const GeneratorOptions& options) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (range < 2) throw std::invalid_argument("profit/weight range must be >= 2");
  if (!(options.capacity_ratio > 0.0 && options.capacity_ratio < 1.0))
    throw std::invalid_argument("capacity ratio must lie in (0, 1)");
  if (!(options.dispersion >= 0.0)) throw std::invalid_argument("dispersion must be >= 0");
}

std::int64_t capacity_for(std::int64_t total_weight, double ratio) {
  return std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(ratio * static_cast<double>(total_weight) + 0.5)));
}

std::string default_name(std::string_view cls, std::size_t n, std::uint64_t seed) {
  return std::string(cls) + "-" + std::to_string(n) + "-s" + std::to_string(seed);
}

template <class DrawItem>
KnapsackInstance generate(std::size_t n, std::uint64_t seed, CorrelationClass cls,
                          const GeneratorOptions& options, DrawItem draw) {
  Rng rng(seed);
  for (int attempt = 0; attempt < kMaxGeneratorAttempts; ++attempt) {
    std::vector<Item> items;
    items.reserve(n);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      auto [w, p] = draw(rng);
      items.push_back({i, w, p});
      total += w;
    }
    const std::int64_t capacity = capacity_for(total, options.capacity_ratio);
    if (capacity >= total) continue;  // only possible for tiny totals
    std::string name =
        options.name.empty() ? default_name(to_string(cls), n, seed) : options.name;
    return {std::move(items), capacity, options.dispersion, cls, std::move(name)};
  }
  throw std::runtime_error("generator could not produce a non-vacuous capacity");
}

}  // namespace

KnapsackInstance generate_uncorrelated(std::size_t n, std::uint64_t seed, std::int64_t range,
                                       const GeneratorOptions& options) {
  check_generator_args(n, range, options);
  return generate(n, seed, CorrelationClass::Uncorrelated, options, [range](Rng& rng) {
    const std::int64_t w = rng.uniform_int(1, range);
    const std::int64_t p = rng.uniform_int(1, range);
    return std::pair{w, p};
  });
}

KnapsackInstance generate_bounded_strongly_correlated(std::size_t n, std::uint64_t seed,
                                                      std::int64_t range,
                                                      std::int64_t bound_offset,
                                                      const GeneratorOptions& options) {
  check_generator_args(n, range, options);
  if (bound_offset < 1) throw std::invalid_argument("bound offset must be >= 1");
  if (options.perturbation < 0) throw std::invalid_argument("perturbation must be >= 0");
  const std::int64_t jitter = options.perturbation;
  return generate(n, seed, CorrelationClass::BoundedStronglyCorrelated, options,
                  [range, bound_offset, jitter](Rng& rng) {
                    for (;;) {
                      const std::int64_t w = rng.uniform_int(1, range);
                      const std::int64_t p =
                          w + bound_offset + (jitter > 0 ? rng.uniform_int(-jitter, jitter) : 0);
                      if (p >= 1) return std::pair{w, p};
                    }
                  });
}

}  // namespace cckp
