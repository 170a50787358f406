#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "tausched/geometry.hpp"

namespace tausched {

using Vec4 = std::array<double, 4>;

struct GrpoConfig {
  int group_size = 8;
  double clip = 0.2;              // epsilon in the clipped surrogate
  double kl_beta = 0.4;           // KL regularization strength
  double advantage_gamma = 1e-6;  // stability term inside the std's sqrt
  double learning_rate = 0.1;

  void validate() const;
};

/// One training step's sampled candidates, with everything needed to
/// recompute their log-probabilities under perturbed parameters.
struct GroupSample {
  std::int64_t step = 0;
  std::vector<Box> boxes;
  std::vector<double> ious;
  std::vector<double> rewards;
  std::vector<double> logp_current;
  std::vector<double> logp_old;
  std::vector<RawBox> raw_actions;  // pre-clamp policy outputs
  Vec4 target_encoding{};           // encode_box(ground truth)

  int size() const { return static_cast<int>(ious.size()); }
};

/// Diagonal Gaussian policy in (center, log-size) space: a learned mean
/// offset on top of the encoded ground truth plus per-dimension log-scales,
/// and a frozen reference copy for the KL regularizer. Effective scales are
/// exp(log_scales) clamped to >= sigma_min.
struct PolicyParams {
  Vec4 mu{};
  Vec4 log_scales{};
  Vec4 mu_ref{};
  Vec4 log_scales_ref{};
  double sigma_min = 0.0;

  Vec4 scales() const;
  Vec4 scales_ref() const;
};

/// Group-normalized advantages: (r_i - mean(r)) / sqrt(pop_var(r) + gamma).
/// All-equal groups yield exactly zero vectors.
std::vector<double> group_advantages(const std::vector<double>& rewards,
                                     double gamma);

struct ObjectiveValue {
  double value = 0.0;
  bool ratio_clamped = false;  // set when a log-ratio had to be bounded
};

/// Clipped surrogate with KL penalty, evaluated on the stored
/// log-probabilities: (1/G) sum_i min(rho_i A_i, clip(rho_i) A_i) - beta*kl.
ObjectiveValue grpo_objective(const GroupSample& group,
                              const std::vector<double>& advantages,
                              double kl, const GrpoConfig& cfg);

double gaussian_log_prob(const RawBox& raw, const Vec4& mean,
                         const Vec4& sigma);

/// Closed-form KL(current || reference) between the diagonal Gaussians.
double gaussian_kl(const PolicyParams& params);

struct PolicyGradient {
  Vec4 d_mu{};
  Vec4 d_log_scales{};
};

/// Surrogate J(theta) with logp_new recomputed under `params` and the KL term
/// taken against the frozen reference. At the sampling parameters this equals
/// grpo_objective on the stored log-probabilities.
double surrogate_value(const PolicyParams& params, const GroupSample& group,
                       const std::vector<double>& advantages,
                       const GrpoConfig& cfg);

/// Exact gradient of surrogate_value with respect to (mu, log_scales).
/// Dimensions whose scale sits at the sigma_min floor get zero log-scale
/// gradient (the clamp is flat there).
PolicyGradient surrogate_gradient(const PolicyParams& params,
                                  const GroupSample& group,
                                  const std::vector<double>& advantages,
                                  const GrpoConfig& cfg);

/// One ascent step on the surrogate. The raw gradient is preconditioned by
/// the inverse diagonal Fisher of the Gaussian (sigma^2 for the mean, 1/2 for
/// the log-scales) so both blocks learn at matched rates; zero gradient means
/// bit-identical parameters out. Throws std::runtime_error naming the
/// offending component on a non-finite gradient.
PolicyParams policy_gradient_step(const PolicyParams& params,
                                  const GroupSample& group,
                                  const std::vector<double>& advantages,
                                  const GrpoConfig& cfg);

}  // namespace tausched
