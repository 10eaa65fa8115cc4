#include "ooo/env/env.hpp"

namespace ooo {

EpisodeResult rollout_episode(Env& env, const PolicyFn& policy, Rng& rng) {
  EpisodeResult ep;
  Vec s = env.reset(rng);
  while (true) {
    const Vec a = policy(s, rng);
    const StepResult r = env.step(a);
    ep.trajectory.push_back({s, a, r.reward, r.next_state, r.terminal});
    ep.ret += r.reward;
    ++ep.length;
    if (r.terminal && r.reward == 1.0) ep.success = true;
    if (r.done()) break;
    s = r.next_state;
  }
  return ep;
}

EvalSummary evaluate_policy(Env& env, const PolicyFn& policy, int n_episodes,
                            Rng& rng) {
  EvalSummary out;
  out.episodes = n_episodes;
  if (n_episodes <= 0) {
    out.episodes = 0;
    return out;
  }
  for (int i = 0; i < n_episodes; ++i) {
    const EpisodeResult ep = rollout_episode(env, policy, rng);
    out.mean_return += ep.ret;
    out.success_rate += ep.success ? 1.0 : 0.0;
    out.mean_length += ep.length;
  }
  out.mean_return /= n_episodes;
  out.success_rate /= n_episodes;
  out.mean_length /= n_episodes;
  return out;
}

}  // namespace ooo
