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

}  // namespace

TrainDiagnostics td3_update(LearnerState& st, const MergedView& data,
                            const SamplerConfig& sampler, Rng& rng) {
  require(st.kind == LearnerKind::kTd3,
          "td3_update: learner is not the deterministic-actor kind");
  require(data.size() > 0, "td3_update: empty buffer");
  const Td3Config& cfg = st.td3;
  const Batch batch = sample_reweighted(data, sampler, rng);
  const int n = batch.size();

  // Target actions come from the current policy mean (there is no
  // target actor) plus clipped smoothing noise, kept inside bounds.
  Mat a_next = st.policy.mean_forward_const(batch.next_states)
                   .array()
                   .tanh()
                   .matrix();
  std::normal_distribution<double> smooth(0.0, cfg.smoothing_noise_std);
  for (int i = 0; i < a_next.rows(); ++i) {
    for (int j = 0; j < a_next.cols(); ++j) {
      const double eps = std::clamp(smooth(rng), -cfg.smoothing_noise_clip,
                                    cfg.smoothing_noise_clip);
      a_next(i, j) = std::clamp(a_next(i, j) + eps, -1.0, 1.0);
    }
  }

  const Mat sa_next = hjoin(batch.next_states, a_next);
  const Vec t1 = st.q1_target.forward_const(sa_next).col(0);
  const Vec t2 = st.q2_target.forward_const(sa_next).col(0);
  const Vec target =
      batch.rewards.array() + cfg.gamma * (1.0 - batch.terminals.array()) *
                                  t1.cwiseMin(t2).array();

  TrainDiagnostics diag;
  diag.mean_extrinsic_reward = batch.rewards.mean();

  const Mat sa = hjoin(batch.states, batch.actions);
  const bool target_ok = target.allFinite();
  for (MlpNet* q : {&st.q1, &st.q2}) {
    q->zero_grad();
    const Vec pred = q->forward(sa).col(0);
    diag.mean_batch_q += 0.5 * pred.mean();
    const Vec diff = pred - target;
    diag.q_loss += 0.5 * (diff.squaredNorm() / n);
    // A runaway critic is the observable here; skip the step instead of
    // aborting once values stop being representable.
    if (!target_ok || !diff.allFinite()) continue;
    q->backward(2.0 * diff / static_cast<double>(n));
  }
  if (target_ok) {
    st.q1_opt.step(st.q1.params(), st.q1.grads());
    st.q2_opt.step(st.q2.params(), st.q2.grads());
  }

  ++st.td3_update_count;
  if (st.td3_update_count % cfg.policy_delay == 0) {
    // Actor ascends Q1(s, tanh(mu(s))); gradients flow through the
    // critic input back into the squashed mean.
    const Mat mu = st.policy.mean_forward(batch.states);
    const Mat a_pi = mu.array().tanh().matrix();
    st.q1.zero_grad();
    const Vec q_pi = st.q1.forward(hjoin(batch.states, a_pi)).col(0);
    diag.policy_loss = -q_pi.mean();
    const Mat dq = Mat::Constant(n, 1, -1.0 / n);
    const Mat dinput = st.q1.backward(dq);
    st.q1.zero_grad();
    const Mat da = dinput.rightCols(st.action_dim);
    const Mat dmu =
        da.array() * (1.0 - a_pi.array().square());
    if (dmu.allFinite()) {
      st.policy.zero_grad();
      st.policy.backward_mean(dmu);
      st.policy_opt.step(st.policy.params(), st.policy.grads());
      st.policy.clamp_log_std();
    }

    const MlpNet& cq1 = st.q1;
    const MlpNet& cq2 = st.q2;
    ema_update(st.q1_target.params(), cq1.params(), cfg.ema_rate);
    ema_update(st.q2_target.params(), cq2.params(), cfg.ema_rate);
  }
  return diag;
}

}  // namespace ooo
