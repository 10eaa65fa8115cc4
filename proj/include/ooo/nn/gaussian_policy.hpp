#pragma once

#include <vector>

#include "ooo/nn/mlp.hpp"

namespace ooo {

// Tanh-squashed Gaussian policy: an MLP emits the pre-squash mean and a
// state-independent log-std vector sets the spread. Sampled actions are
// always inside (-1, 1); dataset actions are mapped back through atanh
// with a clamp so log-probabilities stay finite at the bounds.
class GaussianPolicy {
 public:
  static constexpr double kLogStdMin = -5.0;
  static constexpr double kLogStdMax = 2.0;
  static constexpr double kLogStdInit = -1.0;
  static constexpr double kAtanhClamp = 1.0 - 1e-6;

  GaussianPolicy() = default;
  GaussianPolicy(int state_dim, const std::vector<int>& hidden,
                 int action_dim);

  void init(Rng& rng);

  int state_dim() const { return net_.input_dim(); }
  int action_dim() const { return net_.output_dim(); }

  // Pre-squash mean; forward() caches for a following backward_mean().
  Mat mean_forward(const Mat& states) { return net_.forward(states); }
  Mat mean_forward_const(const Mat& states) const {
    return net_.forward_const(states);
  }
  Mat backward_mean(const Mat& dmean) { return net_.backward(dmean); }

  Vec act_mean(const Vec& state) const;
  Vec act_sample(const Vec& state, Rng& rng) const;

  // log pi(a|s) for squashed actions, per row.
  Vec log_prob(const Mat& states, const Mat& actions) const;

  // Accumulates gradients of mean_i[ -w_i * log pi(a_i|s_i) ] into the
  // net and the log-std; returns that loss value. Advantage-weighted
  // regression is gradient descent on this.
  double weighted_nll_accumulate(const Mat& states, const Mat& actions,
                                 const Vec& weights);

  void zero_grad();
  // Projects log-std back into [kLogStdMin, kLogStdMax]; call after each
  // optimizer step.
  void clamp_log_std();

  const Vec& log_std() const { return log_std_; }
  Vec& mutable_log_std() { return log_std_; }

  std::vector<ParamView> params(const std::string& prefix = "");
  std::vector<ConstParamView> params(const std::string& prefix = "") const;
  std::vector<ParamView> grads();

  static Mat atanh_clamped(const Mat& actions);

 private:
  MlpNet net_;
  Vec log_std_;
  Vec dlog_std_;
};

}  // namespace ooo
