#pragma once

#include <vector>

#include "ooo/nn/mlp.hpp"

namespace ooo {

struct AdamConfig {
  double lr = 3e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adaptive-moment optimizer. Moment buffers are allocated lazily on the
// first step and stay index-aligned with the view lists passed in, so a
// given Adam instance must always be fed the same parameter set.
class Adam {
 public:
  Adam() = default;
  explicit Adam(AdamConfig cfg) : cfg_(cfg) {}

  void step(const std::vector<ParamView>& params,
            const std::vector<ParamView>& grads);

  long step_count() const { return t_; }
  const AdamConfig& config() const { return cfg_; }

 private:
  AdamConfig cfg_;
  long t_ = 0;
  std::vector<std::vector<double>> m_;
  std::vector<std::vector<double>> v_;
};

// target <- (1 - rate) * target + rate * online, elementwise.
void ema_update(const std::vector<ParamView>& target,
                const std::vector<ConstParamView>& online, double rate);

}  // namespace ooo
