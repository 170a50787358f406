#pragma once

#include <utility>
#include <vector>

namespace tausched {

enum class RewardScheme { kBinaryThreshold, kRawIou, kStagedProgress };

/// (progress fraction, threshold) pairs, sorted by fraction.
using StageTable = std::vector<std::pair<double, double>>;

/// Which reward the trainer pays per candidate. Exactly one scheme is active;
/// tau feeds the binary scheme, the stage table the staged one.
struct RewardSpec {
  RewardScheme scheme = RewardScheme::kBinaryThreshold;
  double tau = 0.5;
  StageTable stages;

  void validate() const;
};

/// Indicator reward: 1 iff iou_value >= tau (boundary inclusive).
double binary_reward(double iou_value, double tau);

/// Continuous reward: the IoU itself.
double raw_iou_reward(double iou_value);

/// Threshold of the last stage whose start fraction <= progress.
/// Throws std::runtime_error on an empty table.
double staged_threshold(double progress, const StageTable& stages);

/// Default stage table for the progress-staged baseline: thresholds
/// (0.3, 0.5, 0.7) over the early/middle/late training phases.
StageTable default_stage_table();

}  // namespace tausched
