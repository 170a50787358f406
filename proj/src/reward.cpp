#include "tausched/reward.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tausched {

namespace {

void require_unit(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw std::invalid_argument(std::string(name) +
                                " must be in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace

void RewardSpec::validate() const {
  require_unit(tau, "tau");
  if (scheme == RewardScheme::kStagedProgress) {
    if (stages.empty()) {
      throw std::runtime_error("staged reward scheme requires a stage table");
    }
  }
  double prev = -1.0;
  for (const auto& [frac, stage_tau] : stages) {
    if (!std::isfinite(frac) || frac < 0.0 || frac > 1.0) {
      throw std::runtime_error("stage fraction must be in [0, 1]");
    }
    if (frac <= prev) {
      throw std::runtime_error("stage fractions must be strictly increasing");
    }
    require_unit(stage_tau, "stage tau");
    prev = frac;
  }
}

double binary_reward(double iou_value, double tau) {
  require_unit(iou_value, "iou_value");
  require_unit(tau, "tau");
  return iou_value >= tau ? 1.0 : 0.0;
}

double raw_iou_reward(double iou_value) {
  require_unit(iou_value, "iou_value");
  return iou_value;
}

double staged_threshold(double progress, const StageTable& stages) {
  if (stages.empty()) {
    throw std::runtime_error("staged_threshold: empty stage table");
  }
  require_unit(progress, "progress");
  const double* tau = nullptr;
  for (const auto& [frac, stage_tau] : stages) {
    if (frac <= progress) tau = &stage_tau;
  }
  if (tau == nullptr) {
    throw std::runtime_error("staged_threshold: no stage covers progress " +
                             std::to_string(progress));
  }
  return *tau;
}

StageTable default_stage_table() {
  return {{0.0, 0.3}, {0.10, 0.5}, {0.25, 0.7}};
}

}  // namespace tausched
