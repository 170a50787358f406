#include "tausched/tracker.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tausched {

namespace {

void require_unit_tau(double tau) {
  if (!std::isfinite(tau) || tau < 0.0 || tau > 1.0) {
    throw std::invalid_argument("tau must be in [0, 1], got " +
                                std::to_string(tau));
  }
}

double hit_rate(const StepRecord& rec, double tau) {
  double hits = 0.0;
  for (double v : rec.ious) hits += v >= tau ? 1.0 : 0.0;
  return hits / static_cast<double>(rec.ious.size());
}

}  // namespace

StepRecord StepRecord::make(std::int64_t step, std::vector<double> ious,
                            std::vector<double> rewards) {
  if (ious.empty() || ious.size() != rewards.size()) {
    throw std::invalid_argument(
        "StepRecord: ious and rewards must be non-empty and equal-length");
  }
  StepRecord rec;
  rec.step = step;
  double iou_sum = 0.0, reward_sum = 0.0;
  for (size_t i = 0; i < ious.size(); ++i) {
    if (!std::isfinite(ious[i]) || !std::isfinite(rewards[i])) {
      throw std::invalid_argument("StepRecord: non-finite value");
    }
    iou_sum += ious[i];
    reward_sum += rewards[i];
  }
  rec.group_mean_iou = iou_sum / ious.size();
  rec.group_mean_reward = reward_sum / rewards.size();
  rec.ious = std::move(ious);
  rec.rewards = std::move(rewards);
  return rec;
}

SlidingWindow::SlidingWindow(int capacity, RefreshStrategy refresh)
    : capacity_(capacity), refresh_(refresh) {
  if (capacity < 1) {
    throw std::invalid_argument("window capacity must be >= 1");
  }
}

void SlidingWindow::push(StepRecord record) {
  if (last_step_ && record.step <= *last_step_) {
    throw std::invalid_argument(
        "push: step index must be strictly increasing (got " +
        std::to_string(record.step) + " after " + std::to_string(*last_step_) +
        ")");
  }
  last_step_ = record.step;
  records_.push_back(std::move(record));
  if (static_cast<int>(records_.size()) > capacity_) records_.pop_front();
}

std::optional<double> SlidingWindow::mean_reward(double tau) const {
  require_unit_tau(tau);
  if (!full()) return std::nullopt;
  double sum = 0.0;
  for (const auto& rec : records_) sum += hit_rate(rec, tau);
  return sum / capacity_;
}

std::optional<double> SlidingWindow::reward_std(double tau) const {
  require_unit_tau(tau);
  if (!full()) return std::nullopt;
  const double mean = *mean_reward(tau);
  double var = 0.0;
  for (const auto& rec : records_) {
    const double d = hit_rate(rec, tau) - mean;
    var += d * d;
  }
  return std::sqrt(var / capacity_);
}

std::optional<double> SlidingWindow::iou_margin(double tau) const {
  require_unit_tau(tau);
  if (!full()) return std::nullopt;
  double sum = 0.0;
  for (const auto& rec : records_) sum += rec.group_mean_iou;
  return sum / capacity_ - tau;
}

std::optional<WindowMetrics> SlidingWindow::metrics(double tau) const {
  if (!full()) return std::nullopt;
  return WindowMetrics{*mean_reward(tau), *reward_std(tau), *iou_margin(tau)};
}

void SlidingWindow::refresh_on_update() {
  size_t keep = records_.size();
  switch (refresh_) {
    case RefreshStrategy::kNone:
      return;
    case RefreshStrategy::kHalf:
      keep = static_cast<size_t>(capacity_ / 2);
      break;
    case RefreshStrategy::kQuarter:
      keep = static_cast<size_t>((3 * capacity_ + 3) / 4);
      break;
    case RefreshStrategy::kFull:
      keep = 0;
      break;
  }
  while (records_.size() > keep) records_.pop_front();
}

}  // namespace tausched
