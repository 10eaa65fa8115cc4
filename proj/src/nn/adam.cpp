#include "ooo/nn/adam.hpp"

#include <cmath>

namespace ooo {

void Adam::step(const std::vector<ParamView>& params,
                const std::vector<ParamView>& grads) {
  require(params.size() == grads.size(), "Adam::step: view count mismatch");
  if (m_.empty()) {
    for (const auto& g : grads) {
      m_.emplace_back(static_cast<std::size_t>(g.size()), 0.0);
      v_.emplace_back(static_cast<std::size_t>(g.size()), 0.0);
    }
  }
  require(m_.size() == params.size(), "Adam::step: parameter set changed");

  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const int n = params[i].size();
    require(grads[i].size() == n && static_cast<int>(m_[i].size()) == n,
            "Adam::step: size mismatch for " + params[i].name);
    double* p = params[i].data;
    const double* g = grads[i].data;
    for (int j = 0; j < n; ++j) {
      require(std::isfinite(g[j]),
              "Adam::step: non-finite gradient in " + grads[i].name);
      m_[i][j] = cfg_.beta1 * m_[i][j] + (1.0 - cfg_.beta1) * g[j];
      v_[i][j] = cfg_.beta2 * v_[i][j] + (1.0 - cfg_.beta2) * g[j] * g[j];
      const double mhat = m_[i][j] / bc1;
      const double vhat = v_[i][j] / bc2;
      p[j] -= cfg_.lr * mhat / (std::sqrt(vhat) + cfg_.eps);
      require(std::isfinite(p[j]),
              "Adam::step: non-finite parameter in " + params[i].name);
    }
  }
}

void ema_update(const std::vector<ParamView>& target,
                const std::vector<ConstParamView>& online, double rate) {
  require(target.size() == online.size(), "ema_update: view count mismatch");
  for (std::size_t i = 0; i < target.size(); ++i) {
    require(target[i].rows == online[i].rows &&
                target[i].cols == online[i].cols,
            "ema_update: shape mismatch for " + target[i].name);
    const int n = target[i].size();
    for (int j = 0; j < n; ++j)
      target[i].data[j] =
          (1.0 - rate) * target[i].data[j] + rate * online[i].data[j];
  }
}

}  // namespace ooo
