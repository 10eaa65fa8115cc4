#include "ooo/nn/gaussian_policy.hpp"

#include <cmath>
#include <numbers>

namespace ooo {

GaussianPolicy::GaussianPolicy(int state_dim, const std::vector<int>& hidden,
                               int action_dim)
    : net_(state_dim, hidden, action_dim),
      log_std_(Vec::Constant(action_dim, kLogStdInit)),
      dlog_std_(Vec::Zero(action_dim)) {}

void GaussianPolicy::init(Rng& rng) { net_.init(rng); }

Vec GaussianPolicy::act_mean(const Vec& state) const {
  const Mat mu = net_.forward_const(state.transpose());
  return mu.row(0).array().tanh().transpose();
}

Vec GaussianPolicy::act_sample(const Vec& state, Rng& rng) const {
  const Mat mu = net_.forward_const(state.transpose());
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec u(action_dim());
  for (int d = 0; d < action_dim(); ++d)
    u(d) = mu(0, d) + std::exp(log_std_(d)) * normal(rng);
  return u.array().tanh();
}

Mat GaussianPolicy::atanh_clamped(const Mat& actions) {
  return actions.array()
      .min(kAtanhClamp)
      .max(-kAtanhClamp)
      .atanh()
      .matrix();
}

Vec GaussianPolicy::log_prob(const Mat& states, const Mat& actions) const {
  const Mat mu = net_.forward_const(states);
  const Mat u = atanh_clamped(actions);
  const int n = static_cast<int>(states.rows());
  Vec out(n);
  for (int i = 0; i < n; ++i) {
    double lp = 0.0;
    for (int d = 0; d < action_dim(); ++d) {
      const double sigma = std::exp(log_std_(d));
      const double z = (u(i, d) - mu(i, d)) / sigma;
      lp += -0.5 * z * z - log_std_(d) -
            0.5 * std::log(2.0 * std::numbers::pi);
      // change of variables through tanh
      const double t = std::tanh(u(i, d));
      lp -= std::log(std::max(1.0 - t * t, 1e-12));
    }
    out(i) = lp;
  }
  return out;
}

double GaussianPolicy::weighted_nll_accumulate(const Mat& states,
                                               const Mat& actions,
                                               const Vec& weights) {
  const int n = static_cast<int>(states.rows());
  require(actions.rows() == n && weights.size() == n,
          "GaussianPolicy: batch size mismatch");
  const Mat mu = net_.forward(states);
  const Mat u = atanh_clamped(actions);

  double loss = 0.0;
  Mat dmu = Mat::Zero(n, action_dim());
  for (int i = 0; i < n; ++i) {
    double lp = 0.0;
    for (int d = 0; d < action_dim(); ++d) {
      const double sigma = std::exp(log_std_(d));
      const double z = (u(i, d) - mu(i, d)) / sigma;
      lp += -0.5 * z * z - log_std_(d) -
            0.5 * std::log(2.0 * std::numbers::pi);
      const double t = std::tanh(u(i, d));
      lp -= std::log(std::max(1.0 - t * t, 1e-12));
      // d(-w*lp)/dmu = -w * z / sigma ; d(-w*lp)/dlogstd = -w * (z^2 - 1)
      dmu(i, d) = -(weights(i) / n) * z / sigma;
      dlog_std_(d) += -(weights(i) / n) * (z * z - 1.0);
    }
    loss += -weights(i) * lp / n;
  }
  net_.backward(dmu);
  return loss;
}

void GaussianPolicy::zero_grad() {
  net_.zero_grad();
  dlog_std_.setZero();
}

void GaussianPolicy::clamp_log_std() {
  log_std_ = log_std_.cwiseMin(kLogStdMax).cwiseMax(kLogStdMin);
}

std::vector<ParamView> GaussianPolicy::params(const std::string& prefix) {
  auto out = net_.params(prefix);
  out.push_back({prefix + "log_std", log_std_.data(),
                 static_cast<int>(log_std_.size()), 1});
  return out;
}

std::vector<ConstParamView> GaussianPolicy::params(
    const std::string& prefix) const {
  auto out = net_.params(prefix);
  out.push_back({prefix + "log_std", log_std_.data(),
                 static_cast<int>(log_std_.size()), 1});
  return out;
}

std::vector<ParamView> GaussianPolicy::grads() {
  auto out = net_.grads();
  out.push_back({"dlog_std", dlog_std_.data(),
                 static_cast<int>(dlog_std_.size()), 1});
  return out;
}

}  // namespace ooo
