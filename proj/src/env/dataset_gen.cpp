#include "ooo/env/dataset_gen.hpp"

#include "ooo/env/scripted.hpp"

namespace ooo {

namespace {

// One episode appended to the buffer; actions get per-axis Gaussian
// noise before clamping, and the stored action is the executed one.
void collect_noisy_episode(Env& env, const PolicyFn& policy, double noise_std,
                           TransitionBuffer& out, Rng& rng) {
  std::normal_distribution<double> noise(0.0, 1.0);
  Vec s = env.reset(rng);
  while (true) {
    Vec a = policy(s, rng);
    if (noise_std > 0.0)
      for (int d = 0; d < a.size(); ++d) a(d) += noise_std * noise(rng);
    a = a.cwiseMin(1.0).cwiseMax(-1.0);
    const StepResult r = env.step(a);
    out.append({s, a, r.reward, r.next_state, r.terminal});
    if (r.done()) break;
    s = r.next_state;
  }
  out.end_trajectory();
}

}  // namespace

TransitionBuffer generate_suboptimal_dataset(PointMassWallEnv& env,
                                             int n_traj,
                                             double action_noise_std,
                                             Rng& rng) {
  require(n_traj >= 0, "generate_suboptimal_dataset: negative count");
  const PolicyFn route = over_wall_policy(env);
  {
    Rng probe(0);
    PointMassConfig quiet = env.config();
    quiet.start_noise_std = 0.0;
    PointMassWallEnv check(quiet);
    const EpisodeResult ep = rollout_episode(check, route, probe);
    require(ep.success,
            "generate_suboptimal_dataset: scripted route cannot reach the "
            "goal noise-free");
  }
  TransitionBuffer out(env.spec().state_dim, env.spec().action_dim);
  for (int i = 0; i < n_traj; ++i)
    collect_noisy_episode(env, route, action_noise_std, out, rng);
  return out;
}

TransitionBuffer generate_maze_mixture_dataset(GridMazeEnv& env,
                                               int n_random_traj,
                                               int n_expert_traj,
                                               double expert_noise_std,
                                               Rng& rng) {
  require(n_random_traj >= 0 && n_expert_traj >= 0,
          "generate_maze_mixture_dataset: negative count");
  TransitionBuffer out(env.spec().state_dim, env.spec().action_dim);
  std::uniform_real_distribution<double> uact(-1.0, 1.0);
  const PolicyFn wander = [&uact](const Vec&, Rng& r) {
    Vec a(2);
    a << uact(r), uact(r);
    return a;
  };
  for (int i = 0; i < n_random_traj; ++i)
    collect_noisy_episode(env, wander, 0.0, out, rng);
  const PolicyFn route = maze_route_policy(env);
  for (int i = 0; i < n_expert_traj; ++i)
    collect_noisy_episode(env, route, expert_noise_std, out, rng);
  return out;
}

}  // namespace ooo
