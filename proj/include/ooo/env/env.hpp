#pragma once

#include <functional>

#include "ooo/data/transition.hpp"

namespace ooo {

struct MdpSpec {
  int state_dim = 0;
  int action_dim = 0;
  Vec action_low;
  Vec action_high;
  double gamma = 0.99;
  int horizon = 0;
};

// terminal marks a real absorbing end; truncated marks the horizon
// cutting an episode short. Only terminal should stop bootstrapping.
struct StepResult {
  Vec next_state;
  double reward = 0.0;
  bool terminal = false;
  bool truncated = false;
  bool done() const { return terminal || truncated; }
};

class Env {
 public:
  virtual ~Env() = default;
  virtual const MdpSpec& spec() const = 0;
  virtual Vec reset(Rng& rng) = 0;
  virtual StepResult step(const Vec& action) = 0;
  virtual const Vec& state() const = 0;
  virtual void set_state(const Vec& s) = 0;
};

// Maps a state to an action; stochastic policies draw from the rng.
using PolicyFn = std::function<Vec(const Vec&, Rng&)>;

struct EpisodeResult {
  double ret = 0.0;
  int length = 0;
  bool success = false;
  std::vector<Transition> trajectory;
};

EpisodeResult rollout_episode(Env& env, const PolicyFn& policy, Rng& rng);

struct EvalSummary {
  int episodes = 0;  // 0 flags an empty aggregate
  double mean_return = 0.0;
  double success_rate = 0.0;
  double mean_length = 0.0;
};

EvalSummary evaluate_policy(Env& env, const PolicyFn& policy, int n_episodes,
                            Rng& rng);

}  // namespace ooo
