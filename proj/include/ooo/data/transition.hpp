#pragma once

#include "ooo/common.hpp"

namespace ooo {

// One environment step. The terminal flag marks real absorbing ends
// (goal reached), not horizon truncation, so bootstrapping stays correct.
struct Transition {
  Vec state;
  Vec action;
  double reward = 0.0;
  Vec next_state;
  bool terminal = false;
};

}  // namespace ooo
