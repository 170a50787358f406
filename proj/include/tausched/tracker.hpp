#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

namespace tausched {

enum class RefreshStrategy { kNone, kQuarter, kHalf, kFull };

/// Per-step outcome kept in the window: the raw candidate IoUs plus the
/// rewards paid at the time. Window metrics always recompute from the IoUs
/// against the caller's threshold; the stored rewards are for logging only.
struct StepRecord {
  std::int64_t step = 0;
  std::vector<double> ious;
  std::vector<double> rewards;
  double group_mean_reward = 0.0;
  double group_mean_iou = 0.0;

  static StepRecord make(std::int64_t step, std::vector<double> ious,
                         std::vector<double> rewards);
};

struct WindowMetrics {
  double mean_reward = 0.0;  // window hit rate against the supplied tau
  double reward_std = 0.0;   // population std of per-step hit rates
  double iou_margin = 0.0;   // window mean IoU minus tau
};

/// Sliding window over the most recent N step records. Metrics are defined
/// only while the window is full; a refresh empties part (or all) of it and
/// they become unavailable again until it refills.
class SlidingWindow {
 public:
  SlidingWindow(int capacity, RefreshStrategy refresh);

  /// Appends a record; evicts the oldest once capacity is exceeded.
  /// Step indices must be strictly increasing.
  void push(StepRecord record);

  bool full() const { return static_cast<int>(records_.size()) == capacity_; }
  int size() const { return static_cast<int>(records_.size()); }
  int capacity() const { return capacity_; }
  RefreshStrategy refresh_strategy() const { return refresh_; }
  const std::deque<StepRecord>& records() const { return records_; }

  std::optional<double> mean_reward(double tau) const;
  std::optional<double> reward_std(double tau) const;
  std::optional<double> iou_margin(double tau) const;
  std::optional<WindowMetrics> metrics(double tau) const;

  /// Applies the configured refresh after a threshold update: half keeps the
  /// newest floor(N/2) records, quarter the newest ceil(3N/4), full empties
  /// the window, none leaves it untouched.
  void refresh_on_update();

 private:
  int capacity_;
  RefreshStrategy refresh_;
  std::deque<StepRecord> records_;
  std::optional<std::int64_t> last_step_;
};

}  // namespace tausched
