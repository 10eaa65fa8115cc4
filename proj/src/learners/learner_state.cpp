#include <algorithm>
#include <cmath>

#include "ooo/learners/learner.hpp"
#include "ooo/nn/checkpoint.hpp"

namespace ooo {

bool TrainDiagnostics::finite() const {
  return std::isfinite(value_loss) && std::isfinite(q_loss) &&
         std::isfinite(policy_loss) && std::isfinite(mean_batch_q) &&
         std::isfinite(mean_awr_weight) &&
         std::isfinite(mean_extrinsic_reward) &&
         std::isfinite(mean_intrinsic_reward);
}

namespace {

LearnerState make_common(int state_dim, int action_dim,
                         const NetWidths& widths, Rng& rng) {
  require(state_dim > 0 && action_dim > 0,
          "LearnerState: dimensions must be positive");
  LearnerState st;
  st.state_dim = state_dim;
  st.action_dim = action_dim;
  st.policy = GaussianPolicy(state_dim, widths.policy, action_dim);
  st.q1 = MlpNet(state_dim + action_dim, widths.q, 1);
  st.q2 = MlpNet(state_dim + action_dim, widths.q, 1);
  st.value = MlpNet(state_dim, widths.value, 1);
  st.policy.init(rng);
  st.q1.init(rng);
  st.q2.init(rng);
  st.value.init(rng);
  st.q1_target = st.q1;
  st.q2_target = st.q2;
  return st;
}

}  // namespace

LearnerState LearnerState::make_iql(int state_dim, int action_dim,
                                    const NetWidths& widths,
                                    const IqlConfig& cfg, Rng& init_rng) {
  require(cfg.expectile > 0.0 && cfg.expectile < 1.0,
          "IqlConfig: expectile must lie in (0,1)");
  require(cfg.temperature >= 0.0, "IqlConfig: temperature must be >= 0");
  require(cfg.weight_clip > 0.0, "IqlConfig: weight_clip must be positive");
  LearnerState st = make_common(state_dim, action_dim, widths, init_rng);
  st.kind = LearnerKind::kIql;
  st.iql = cfg;
  st.policy_opt = Adam(AdamConfig{cfg.policy_lr, 0.9, 0.999, 1e-8});
  st.q1_opt = Adam(AdamConfig{cfg.q_lr, 0.9, 0.999, 1e-8});
  st.q2_opt = Adam(AdamConfig{cfg.q_lr, 0.9, 0.999, 1e-8});
  st.value_opt = Adam(AdamConfig{cfg.value_lr, 0.9, 0.999, 1e-8});
  return st;
}

LearnerState LearnerState::make_td3(int state_dim, int action_dim,
                                    const NetWidths& widths,
                                    const Td3Config& cfg, Rng& init_rng) {
  require(cfg.policy_delay >= 1, "Td3Config: policy_delay must be >= 1");
  LearnerState st = make_common(state_dim, action_dim, widths, init_rng);
  st.kind = LearnerKind::kTd3;
  st.td3 = cfg;
  st.policy_opt = Adam(AdamConfig{cfg.policy_lr, 0.9, 0.999, 1e-8});
  st.q1_opt = Adam(AdamConfig{cfg.q_lr, 0.9, 0.999, 1e-8});
  st.q2_opt = Adam(AdamConfig{cfg.q_lr, 0.9, 0.999, 1e-8});
  return st;
}

Vec LearnerState::act(const Vec& state, ActMode mode, Rng& rng) const {
  if (mode == ActMode::kDeterministic) return policy.act_mean(state);
  if (kind == LearnerKind::kIql) return policy.act_sample(state, rng);
  Vec a = policy.act_mean(state);
  std::normal_distribution<double> noise(0.0, td3.exploration_noise_std);
  for (int i = 0; i < a.size(); ++i)
    a(i) = std::clamp(a(i) + noise(rng), -1.0, 1.0);
  return a;
}

std::vector<ParamView> LearnerState::params(const std::string& prefix) {
  std::vector<ParamView> out;
  auto add = [&out](std::vector<ParamView> views) {
    for (auto& v : views) out.push_back(std::move(v));
  };
  add(policy.params(prefix + "policy."));
  add(q1.params(prefix + "q1."));
  add(q2.params(prefix + "q2."));
  add(q1_target.params(prefix + "q1_target."));
  add(q2_target.params(prefix + "q2_target."));
  add(value.params(prefix + "value."));
  return out;
}

std::vector<ConstParamView> LearnerState::params(
    const std::string& prefix) const {
  std::vector<ConstParamView> out;
  auto add = [&out](std::vector<ConstParamView> views) {
    for (auto& v : views) out.push_back(std::move(v));
  };
  add(policy.params(prefix + "policy."));
  add(q1.params(prefix + "q1."));
  add(q2.params(prefix + "q2."));
  add(q1_target.params(prefix + "q1_target."));
  add(q2_target.params(prefix + "q2_target."));
  add(value.params(prefix + "value."));
  return out;
}

std::uint64_t LearnerState::hash() const { return param_hash(params()); }

void LearnerState::save(const std::string& path) const {
  save_checkpoint(path, params());
}

void LearnerState::load(const std::string& path) {
  load_checkpoint_into(path, params());
}

void copy_parameters(LearnerState& dst, const LearnerState& src) {
  auto dst_views = dst.params();
  auto src_views = static_cast<const LearnerState&>(src).params();
  require(dst_views.size() == src_views.size(),
          "copy_parameters: parameter sets differ");
  for (std::size_t i = 0; i < dst_views.size(); ++i) {
    require(dst_views[i].name == src_views[i].name &&
                dst_views[i].rows == src_views[i].rows &&
                dst_views[i].cols == src_views[i].cols,
            "copy_parameters: tensor mismatch at " + dst_views[i].name);
    std::copy(src_views[i].data, src_views[i].data + src_views[i].size(),
              dst_views[i].data);
  }
}

}  // namespace ooo
