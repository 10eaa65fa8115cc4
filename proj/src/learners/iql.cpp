#include <algorithm>
#include <cmath>

#include "ooo/learners/learner.hpp"

namespace ooo {

namespace {

Mat hjoin(const Mat& states, const Mat& actions) {
  Mat sa(states.rows(), states.cols() + actions.cols());
  sa << states, actions;
  return sa;
}

Vec min_target_q(const LearnerState& st, const Mat& sa) {
  const Vec t1 = st.q1_target.forward_const(sa).col(0);
  const Vec t2 = st.q2_target.forward_const(sa).col(0);
  return t1.cwiseMin(t2);
}

}  // namespace

double expectile_loss(double x, double tau) {
  const double w = std::abs(tau - (x < 0.0 ? 1.0 : 0.0));
  return w * x * x;
}

double iql_value_step(LearnerState& st, const Batch& batch) {
  require(st.kind == LearnerKind::kIql,
          "iql_value_step: learner is not the expectile kind");
  const int n = batch.size();
  require(n > 0, "iql_value_step: empty batch");
  const double tau = st.iql.expectile;

  const Vec qmin = min_target_q(st, hjoin(batch.states, batch.actions));
  st.value.zero_grad();
  const Vec v = st.value.forward(batch.states).col(0);

  double loss = 0.0;
  Mat dv(n, 1);
  for (int i = 0; i < n; ++i) {
    const double x = qmin(i) - v(i);
    const double w = std::abs(tau - (x < 0.0 ? 1.0 : 0.0));
    loss += w * x * x;
    dv(i, 0) = -2.0 * w * x / n;
  }
  loss /= n;
  require(std::isfinite(loss), "iql_value_step: non-finite loss");

  st.value.backward(dv);
  st.value_opt.step(st.value.params(), st.value.grads());
  return loss;
}

QStepStats iql_q_step(LearnerState& st, const Batch& batch) {
  require(st.kind == LearnerKind::kIql,
          "iql_q_step: learner is not the expectile kind");
  const int n = batch.size();
  require(n > 0, "iql_q_step: empty batch");

  const Vec v_next = st.value.forward_const(batch.next_states).col(0);
  const Vec target =
      batch.rewards.array() +
      st.iql.gamma * (1.0 - batch.terminals.array()) * v_next.array();

  const Mat sa = hjoin(batch.states, batch.actions);
  QStepStats stats;
  for (MlpNet* q : {&st.q1, &st.q2}) {
    q->zero_grad();
    const Vec pred = q->forward(sa).col(0);
    const Vec diff = pred - target;
    const double loss = diff.squaredNorm() / n;
    require(std::isfinite(loss), "iql_q_step: non-finite loss");
    stats.loss += 0.5 * loss;
    stats.mean_q += 0.5 * pred.mean();
    q->backward(2.0 * diff / static_cast<double>(n));
  }
  st.q1_opt.step(st.q1.params(), st.q1.grads());
  st.q2_opt.step(st.q2.params(), st.q2.grads());

  const MlpNet& cq1 = st.q1;
  const MlpNet& cq2 = st.q2;
  ema_update(st.q1_target.params(), cq1.params(), st.iql.ema_rate);
  ema_update(st.q2_target.params(), cq2.params(), st.iql.ema_rate);
  return stats;
}

PolicyStepStats iql_policy_step(LearnerState& st, const Batch& batch) {
  require(st.kind == LearnerKind::kIql,
          "iql_policy_step: learner is not the expectile kind");
  const int n = batch.size();
  require(n > 0, "iql_policy_step: empty batch");
  const double beta = st.iql.temperature;
  const double clip = st.iql.weight_clip;

  const Vec qmin = min_target_q(st, hjoin(batch.states, batch.actions));
  const Vec v = st.value.forward_const(batch.states).col(0);

  Vec weights(n);
  for (int i = 0; i < n; ++i) {
    const double adv = qmin(i) - v(i);
    if (beta == 0.0) {
      weights(i) = adv > 0.0 ? clip : (adv == 0.0 ? 1.0 : 0.0);
    } else {
      weights(i) = std::min(std::exp(adv / beta), clip);
    }
  }
  require(weights.allFinite(), "iql_policy_step: non-finite weights");

  st.policy.zero_grad();
  const double loss =
      st.policy.weighted_nll_accumulate(batch.states, batch.actions, weights);
  require(std::isfinite(loss), "iql_policy_step: non-finite loss");
  st.policy_opt.step(st.policy.params(), st.policy.grads());
  st.policy.clamp_log_std();
  return PolicyStepStats{loss, weights.mean()};
}

namespace {

// Shared step body: bonus-shaped rewards in, one round of value, policy,
// and critic updates out. The zero bonus reproduces the pessimistic
// update bit for bit because it adds exact zeros and trains nothing.
TrainDiagnostics iql_round(LearnerState& st, const MergedView& data,
                           Bonus& bonus, const SamplerConfig& sampler,
                           Rng& rng) {
  Batch batch = sample_reweighted(data, sampler, rng);
  bonus.train(batch.states);
  const Vec intrinsic = bonus.terms(batch.states, batch.actions);

  TrainDiagnostics diag;
  diag.mean_extrinsic_reward = batch.rewards.mean();
  diag.mean_intrinsic_reward = intrinsic.mean();
  batch.rewards += intrinsic;

  diag.value_loss = iql_value_step(st, batch);
  const PolicyStepStats ps = iql_policy_step(st, batch);
  diag.policy_loss = ps.loss;
  diag.mean_awr_weight = ps.mean_weight;
  const QStepStats qs = iql_q_step(st, batch);
  diag.q_loss = qs.loss;
  diag.mean_batch_q = qs.mean_q;
  require(diag.finite(), "iql update: non-finite diagnostics");
  return diag;
}

}  // namespace

TrainDiagnostics opt_update(LearnerState& st, const MergedView& data,
                            Bonus& bonus, const SamplerConfig& sampler,
                            Rng& rng) {
  return iql_round(st, data, bonus, sampler, rng);
}

TrainDiagnostics pessm_update(LearnerState& st, const MergedView& data,
                              const SamplerConfig& sampler, Rng& rng) {
  ZeroBonus none;
  return iql_round(st, data, none, sampler, rng);
}

}  // namespace ooo
