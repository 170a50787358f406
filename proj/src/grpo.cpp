#include "tausched/grpo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tausched {

namespace {

// exp() of log-ratios beyond this is clamped and flagged.
constexpr double kMaxLogRatio = 30.0;

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // 0.5*log(2*pi)

struct SurrogateTerms {
  double sum = 0.0;      // sum_i min(rho A, clip(rho) A)
  bool clamped = false;  // a log-ratio exceeded kMaxLogRatio
};

// Shared core of grpo_objective and surrogate_value. `active` (optional,
// length G) receives rho_i when the unclipped branch drives the gradient and
// 0 when the clip is flat.
SurrogateTerms clipped_surrogate(const std::vector<double>& logp_new,
                                 const std::vector<double>& logp_old,
                                 const std::vector<double>& advantages,
                                 double clip, std::vector<double>* active) {
  SurrogateTerms out;
  const int n = static_cast<int>(advantages.size());
  if (active) active->assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double log_ratio = logp_new[i] - logp_old[i];
    if (std::abs(log_ratio) > kMaxLogRatio) {
      log_ratio = std::clamp(log_ratio, -kMaxLogRatio, kMaxLogRatio);
      out.clamped = true;
    }
    const double rho = std::exp(log_ratio);
    const double a = advantages[i];
    const double unclipped = rho * a;
    const double clipped = std::clamp(rho, 1.0 - clip, 1.0 + clip) * a;
    if (unclipped <= clipped) {
      out.sum += unclipped;
      if (active) (*active)[i] = rho;
    } else {
      out.sum += clipped;
      // clip active with rho outside the band: flat in theta
    }
  }
  return out;
}

}  // namespace

void GrpoConfig::validate() const {
  if (group_size < 2) throw std::runtime_error("group_size must be >= 2");
  if (!(clip > 0.0) || !(clip < 1.0)) {
    throw std::runtime_error("clip must lie in (0, 1)");
  }
  if (kl_beta < 0.0) throw std::runtime_error("kl_beta must be >= 0");
  if (!(advantage_gamma > 0.0)) {
    throw std::runtime_error("advantage_gamma must be > 0");
  }
  if (!(learning_rate > 0.0)) {
    throw std::runtime_error("learning_rate must be > 0");
  }
}

Vec4 PolicyParams::scales() const {
  Vec4 s;
  for (int d = 0; d < 4; ++d) s[d] = std::max(std::exp(log_scales[d]), sigma_min);
  return s;
}

Vec4 PolicyParams::scales_ref() const {
  Vec4 s;
  for (int d = 0; d < 4; ++d) {
    s[d] = std::max(std::exp(log_scales_ref[d]), sigma_min);
  }
  return s;
}

std::vector<double> group_advantages(const std::vector<double>& rewards,
                                     double gamma) {
  if (rewards.size() < 2) {
    throw std::invalid_argument("group_advantages: need at least 2 rewards");
  }
  if (!(gamma > 0.0)) {
    throw std::invalid_argument("group_advantages: gamma must be > 0");
  }
  bool all_equal = true;
  for (double r : rewards) {
    if (!std::isfinite(r)) {
      throw std::invalid_argument("group_advantages: non-finite reward");
    }
    all_equal = all_equal && r == rewards.front();
  }
  const int n = static_cast<int>(rewards.size());
  if (all_equal) return std::vector<double>(n, 0.0);

  double mean = 0.0;
  for (double r : rewards) mean += r;
  mean /= n;
  double var = 0.0;
  for (double r : rewards) var += (r - mean) * (r - mean);
  var /= n;  // population variance, matching the 1/G normalization
  const double denom = std::sqrt(var + gamma);

  std::vector<double> advantages(n);
  for (int i = 0; i < n; ++i) advantages[i] = (rewards[i] - mean) / denom;
  return advantages;
}

ObjectiveValue grpo_objective(const GroupSample& group,
                              const std::vector<double>& advantages,
                              double kl, const GrpoConfig& cfg) {
  const int n = group.size();
  if (n == 0 || advantages.size() != static_cast<size_t>(n) ||
      group.logp_current.size() != static_cast<size_t>(n) ||
      group.logp_old.size() != static_cast<size_t>(n)) {
    throw std::invalid_argument("grpo_objective: inconsistent group lengths");
  }
  if (kl < 0.0) throw std::invalid_argument("grpo_objective: negative kl");
  const SurrogateTerms t = clipped_surrogate(group.logp_current, group.logp_old,
                                             advantages, cfg.clip, nullptr);
  return {t.sum / n - cfg.kl_beta * kl, t.clamped};
}

double gaussian_log_prob(const RawBox& raw, const Vec4& mean,
                         const Vec4& sigma) {
  double lp = 0.0;
  for (int d = 0; d < 4; ++d) {
    const double s = std::max(sigma[d], 1e-12);
    const double z = (raw[d] - mean[d]) / s;
    lp += -kHalfLog2Pi - std::log(s) - 0.5 * z * z;
  }
  return lp;
}

double gaussian_kl(const PolicyParams& params) {
  const Vec4 sigma = params.scales();
  const Vec4 sigma_ref = params.scales_ref();
  double kl = 0.0;
  for (int d = 0; d < 4; ++d) {
    const double dmu = params.mu[d] - params.mu_ref[d];
    kl += std::log(sigma_ref[d] / sigma[d]) +
          (sigma[d] * sigma[d] + dmu * dmu) /
              (2.0 * sigma_ref[d] * sigma_ref[d]) -
          0.5;
  }
  return kl;
}

namespace {

std::vector<double> recompute_logp(const PolicyParams& params,
                                   const GroupSample& group) {
  const Vec4 sigma = params.scales();
  Vec4 mean;
  for (int d = 0; d < 4; ++d) mean[d] = group.target_encoding[d] + params.mu[d];
  std::vector<double> lp(group.raw_actions.size());
  for (size_t i = 0; i < group.raw_actions.size(); ++i) {
    lp[i] = gaussian_log_prob(group.raw_actions[i], mean, sigma);
  }
  return lp;
}

}  // namespace

double surrogate_value(const PolicyParams& params, const GroupSample& group,
                       const std::vector<double>& advantages,
                       const GrpoConfig& cfg) {
  const int n = group.size();
  if (n == 0 || group.raw_actions.size() != static_cast<size_t>(n)) {
    throw std::invalid_argument("surrogate_value: group has no raw actions");
  }
  const std::vector<double> logp_new = recompute_logp(params, group);
  const SurrogateTerms t = clipped_surrogate(logp_new, group.logp_old,
                                             advantages, cfg.clip, nullptr);
  return t.sum / n - cfg.kl_beta * gaussian_kl(params);
}

PolicyGradient surrogate_gradient(const PolicyParams& params,
                                  const GroupSample& group,
                                  const std::vector<double>& advantages,
                                  const GrpoConfig& cfg) {
  const int n = group.size();
  if (n == 0 || group.raw_actions.size() != static_cast<size_t>(n)) {
    throw std::invalid_argument("surrogate_gradient: group has no raw actions");
  }
  const Vec4 sigma = params.scales();
  const Vec4 sigma_ref = params.scales_ref();
  Vec4 mean;
  for (int d = 0; d < 4; ++d) mean[d] = group.target_encoding[d] + params.mu[d];

  // exp(log_scales) below the floor leaves sigma flat in log_scales.
  std::array<bool, 4> live;
  for (int d = 0; d < 4; ++d) {
    live[d] = std::exp(params.log_scales[d]) > params.sigma_min;
  }

  const std::vector<double> logp_new = recompute_logp(params, group);
  std::vector<double> active;
  clipped_surrogate(logp_new, group.logp_old, advantages, cfg.clip, &active);

  PolicyGradient g;
  for (int i = 0; i < n; ++i) {
    const double weight = advantages[i] * active[i];  // 0 when clip is flat
    if (weight == 0.0) continue;
    for (int d = 0; d < 4; ++d) {
      const double z = (group.raw_actions[i][d] - mean[d]) / sigma[d];
      g.d_mu[d] += weight * z / sigma[d];
      if (live[d]) g.d_log_scales[d] += weight * (z * z - 1.0);
    }
  }
  for (int d = 0; d < 4; ++d) {
    g.d_mu[d] /= n;
    g.d_log_scales[d] /= n;
    // KL(current || ref) gradients
    const double dmu = params.mu[d] - params.mu_ref[d];
    g.d_mu[d] -= cfg.kl_beta * dmu / (sigma_ref[d] * sigma_ref[d]);
    if (live[d]) {
      const double ratio = sigma[d] * sigma[d] / (sigma_ref[d] * sigma_ref[d]);
      g.d_log_scales[d] -= cfg.kl_beta * (ratio - 1.0);
    }
  }
  return g;
}

PolicyParams policy_gradient_step(const PolicyParams& params,
                                  const GroupSample& group,
                                  const std::vector<double>& advantages,
                                  const GrpoConfig& cfg) {
  const PolicyGradient g = surrogate_gradient(params, group, advantages, cfg);
  for (int d = 0; d < 4; ++d) {
    if (!std::isfinite(g.d_mu[d])) {
      throw std::runtime_error("policy_gradient_step: non-finite gradient in mu[" +
                               std::to_string(d) + "]");
    }
    if (!std::isfinite(g.d_log_scales[d])) {
      throw std::runtime_error(
          "policy_gradient_step: non-finite gradient in log_scales[" +
          std::to_string(d) + "]");
    }
  }
  const Vec4 sigma = params.scales();
  PolicyParams next = params;
  for (int d = 0; d < 4; ++d) {
    // Inverse diagonal Fisher: sigma^2 for the mean, 1/2 for log-scales.
    const double step_mu = cfg.learning_rate * sigma[d] * sigma[d] * g.d_mu[d];
    const double step_s = cfg.learning_rate * 0.5 * g.d_log_scales[d];
    if (step_mu != 0.0) next.mu[d] += step_mu;
    if (step_s != 0.0) next.log_scales[d] += step_s;
  }
  return next;
}

}  // namespace tausched
