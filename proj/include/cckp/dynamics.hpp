#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

namespace cckp {

struct BoundChange {
  std::int64_t t = 0;
  std::int64_t bound = 0;

  friend bool operator==(const BoundChange&, const BoundChange&) = default;
};

/// Weight bound that random-walks every `interval` evaluations:
/// B_t = B_{t-1} + g_t when t mod interval == 0 (t > 0), otherwise B_{t-1},
/// with g_t uniform on the integers [-magnitude, magnitude] and the result
/// clamped below at `floor`.
class BoundSchedule {
 public:
  BoundSchedule(std::int64_t initial, std::int64_t interval, std::int64_t magnitude,
                std::uint64_t seed, std::int64_t floor = 1);

  std::int64_t initial() const { return initial_; }
  std::int64_t interval() const { return interval_; }
  std::int64_t magnitude() const { return magnitude_; }
  std::uint64_t seed() const { return seed_; }
  std::int64_t floor() const { return floor_; }

  /// Replays the stream from the seed; O(t / interval).
  std::int64_t bound_at(std::int64_t t) const;

  /// Change points with 0 < t <= t_max, in time order.
  std::vector<BoundChange> changes_in(std::int64_t t_max) const;

  /// Bounds after 0, 1, ..., k changes for every change up to t_max; the
  /// bound at time t is entry t / interval.
  std::vector<std::int64_t> epochs(std::int64_t t_max) const;

 private:
  std::int64_t initial_;
  std::int64_t interval_;
  std::int64_t magnitude_;
  std::uint64_t seed_;
  std::int64_t floor_;
};

/// `t,bound` rows: the initial bound at t=0, then every change point.
void write_schedule_csv(std::ostream& out, const BoundSchedule& schedule, std::int64_t t_max);

}  // namespace cckp
