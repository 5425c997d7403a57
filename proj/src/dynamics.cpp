#include "cckp/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

#include "cckp/rng.hpp"

namespace cckp {

BoundSchedule::BoundSchedule(std::int64_t initial, std::int64_t interval, std::int64_t magnitude,
                             std::uint64_t seed, std::int64_t floor)
    : initial_(initial), interval_(interval), magnitude_(magnitude), seed_(seed), floor_(floor) {
  if (interval_ < 1) throw std::invalid_argument("change interval must be >= 1");
  if (magnitude_ < 0) throw std::invalid_argument("change magnitude must be >= 0");
  if (floor_ < 1) throw std::invalid_argument("bound floor must be >= 1");
  if (initial_ < floor_) throw std::invalid_argument("initial bound must be >= floor");
}

std::vector<std::int64_t> BoundSchedule::epochs(std::int64_t t_max) const {
  if (t_max < 0) throw std::invalid_argument("t must be >= 0");
  const std::int64_t changes = t_max / interval_;
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(changes) + 1);
  out.push_back(initial_);
  Rng rng(seed_);
  std::int64_t bound = initial_;
  for (std::int64_t k = 0; k < changes; ++k) {
    bound = std::max(floor_, bound + rng.uniform_int(-magnitude_, magnitude_));
    out.push_back(bound);
  }
  return out;
}

std::int64_t BoundSchedule::bound_at(std::int64_t t) const { return epochs(t).back(); }

std::vector<BoundChange> BoundSchedule::changes_in(std::int64_t t_max) const {
  const auto bounds = epochs(t_max);
  std::vector<BoundChange> out;
  out.reserve(bounds.size() - 1);
  for (std::size_t k = 1; k < bounds.size(); ++k)
    out.push_back({static_cast<std::int64_t>(k) * interval_, bounds[k]});
  return out;
}

void write_schedule_csv(std::ostream& out, const BoundSchedule& schedule, std::int64_t t_max) {
  out << "t,bound\n" << 0 << ',' << schedule.initial() << '\n';
  for (const BoundChange& c : schedule.changes_in(t_max)) out << c.t << ',' << c.bound << '\n';
}

}  // namespace cckp
