#pragma once

#include "ooo/env/env.hpp"

namespace ooo {

struct SingleStateConfig {
  double gamma = 0.99;
  int horizon = 100;
};

// Degenerate control environment: one state, no reward, episodes end
// only at the horizon. Useful for isolating bonus decay from dynamics.
class SingleStateEnv : public Env {
 public:
  explicit SingleStateEnv(SingleStateConfig cfg = {});

  const MdpSpec& spec() const override { return spec_; }
  Vec reset(Rng& rng) override;
  StepResult step(const Vec& action) override;
  const Vec& state() const override { return state_; }
  void set_state(const Vec& s) override;

 private:
  SingleStateConfig cfg_;
  MdpSpec spec_;
  Vec state_;
  int steps_ = 0;
};

}  // namespace ooo
