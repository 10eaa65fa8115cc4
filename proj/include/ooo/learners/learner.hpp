#pragma once

#include <string>
#include <vector>

#include "ooo/bonus/bonus.hpp"
#include "ooo/data/buffer.hpp"
#include "ooo/nn/adam.hpp"
#include "ooo/nn/gaussian_policy.hpp"
#include "ooo/nn/mlp.hpp"

namespace ooo {

// Expectile-regression actor-critic (IQL). Value and critic learning
// never evaluate Q on actions the dataset does not contain; the policy
// is fit by advantage-weighted regression.
struct IqlConfig {
  double expectile = 0.9;     // tau, asymmetry of the value regression
  double temperature = 3.0;   // beta, advantage weight sharpness
  double gamma = 0.99;
  double ema_rate = 0.005;    // target critic tracking speed
  double weight_clip = 100.0;
  double value_lr = 3e-4;
  double q_lr = 3e-4;
  double policy_lr = 3e-4;
};

// Twin-critic deterministic-actor learner without any pessimism term,
// kept as a baseline whose critic is free to overestimate.
struct Td3Config {
  int policy_delay = 2;
  double smoothing_noise_std = 0.2;
  double smoothing_noise_clip = 0.5;
  double exploration_noise_std = 0.1;
  double gamma = 0.99;
  double ema_rate = 0.005;
  double q_lr = 3e-4;
  double policy_lr = 3e-4;
};

struct NetWidths {
  std::vector<int> policy = {256, 256};
  std::vector<int> q = {256, 256};
  std::vector<int> value = {256, 256};
};

struct TrainDiagnostics {
  double value_loss = 0.0;
  double q_loss = 0.0;
  double policy_loss = 0.0;
  double mean_batch_q = 0.0;
  double mean_awr_weight = 0.0;
  double mean_extrinsic_reward = 0.0;
  double mean_intrinsic_reward = 0.0;
  bool finite() const;
};

enum class LearnerKind { kIql, kTd3 };
enum class ActMode { kStochastic, kDeterministic };

// One trainable agent: policy, twin critics with EMA targets, and (for
// the expectile learner) a state-value net. Copyable, so evaluation and
// freezing work on snapshots.
struct LearnerState {
  LearnerKind kind = LearnerKind::kIql;
  int state_dim = 0;
  int action_dim = 0;
  IqlConfig iql;
  Td3Config td3;

  GaussianPolicy policy;
  MlpNet q1, q2;
  MlpNet q1_target, q2_target;
  MlpNet value;

  Adam policy_opt, q1_opt, q2_opt, value_opt;
  long td3_update_count = 0;

  static LearnerState make_iql(int state_dim, int action_dim,
                               const NetWidths& widths, const IqlConfig& cfg,
                               Rng& init_rng);
  static LearnerState make_td3(int state_dim, int action_dim,
                               const NetWidths& widths, const Td3Config& cfg,
                               Rng& init_rng);

  // Stochastic mode samples the policy (or adds exploration noise for
  // the deterministic-actor learner); deterministic mode is the squashed
  // mean. Actions always land in [-1, 1] per dimension.
  Vec act(const Vec& state, ActMode mode, Rng& rng) const;

  std::vector<ParamView> params(const std::string& prefix = "");
  std::vector<ConstParamView> params(const std::string& prefix = "") const;
  std::uint64_t hash() const;
  void save(const std::string& path) const;
  void load(const std::string& path);
};

// Overwrites dst's network parameters with src's (architectures must
// match); optimizer state in dst is left as it was.
void copy_parameters(LearnerState& dst, const LearnerState& src);

// |tau - 1(x < 0)| * x^2
double expectile_loss(double x, double tau);

// One gradient step of expectile regression of V(s) toward the min of
// the target critics at dataset actions. Returns the loss.
double iql_value_step(LearnerState& st, const Batch& batch);

struct QStepStats {
  double loss = 0.0;
  double mean_q = 0.0;  // online critic mean over the batch, pre-update
};

// One MSE step of both critics toward r + (1 - terminal) * gamma * V(s'),
// followed by the EMA target update.
QStepStats iql_q_step(LearnerState& st, const Batch& batch);

struct PolicyStepStats {
  double loss = 0.0;
  double mean_weight = 0.0;
};

// Advantage-weighted regression: weights exp((min Q_target - V)/beta)
// clipped at weight_clip. temperature 0 uses the pointwise limit
// (weight_clip above, 1 at, 0 below zero advantage).
PolicyStepStats iql_policy_step(LearnerState& st, const Batch& batch);

// Optimistic update: samples a batch, trains the bonus, adds intrinsic
// terms to the rewards, then runs the value, policy, and critic steps.
TrainDiagnostics opt_update(LearnerState& st, const MergedView& data,
                            Bonus& bonus, const SamplerConfig& sampler,
                            Rng& rng);

// Pessimistic update: the same learner steps on extrinsic rewards only.
// Takes no bonus, so intrinsic state cannot leak in.
TrainDiagnostics pessm_update(LearnerState& st, const MergedView& data,
                              const SamplerConfig& sampler, Rng& rng);

// Twin-critic update with target-action smoothing and a delayed
// deterministic actor step. A diverging critic is reported, not fatal:
// non-finite steps are skipped and training continues.
TrainDiagnostics td3_update(LearnerState& st, const MergedView& data,
                            const SamplerConfig& sampler, Rng& rng);

}  // namespace ooo
