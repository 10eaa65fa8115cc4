#include "ooo/env/single_state.hpp"

namespace ooo {

SingleStateEnv::SingleStateEnv(SingleStateConfig cfg) : cfg_(cfg) {
  require(cfg_.horizon > 0, "SingleStateEnv: horizon must be positive");
  spec_.state_dim = 1;
  spec_.action_dim = 1;
  spec_.action_low = Vec::Constant(1, -1.0);
  spec_.action_high = Vec::Constant(1, 1.0);
  spec_.gamma = cfg_.gamma;
  spec_.horizon = cfg_.horizon;
  state_ = Vec::Zero(1);
}

Vec SingleStateEnv::reset(Rng&) {
  state_ = Vec::Zero(1);
  steps_ = 0;
  return state_;
}

StepResult SingleStateEnv::step(const Vec& action) {
  require(action.size() == 1, "SingleStateEnv::step: bad action size");
  ++steps_;
  StepResult out;
  out.next_state = state_;
  out.reward = 0.0;
  out.terminal = false;
  out.truncated = steps_ >= cfg_.horizon;
  return out;
}

void SingleStateEnv::set_state(const Vec& s) {
  require(s.size() == 1, "SingleStateEnv::set_state: bad size");
  state_ = s;
}

}  // namespace ooo
