#pragma once

#include "ooo/data/buffer.hpp"
#include "ooo/env/grid_maze.hpp"
#include "ooo/env/point_mass.hpp"

namespace ooo {

// Rolls the over-the-wall scripted route with Gaussian action noise.
// Verifies once that the noise-free route reaches the goal.
TransitionBuffer generate_suboptimal_dataset(PointMassWallEnv& env,
                                             int n_traj,
                                             double action_noise_std,
                                             Rng& rng);

// Mostly undirected random walks plus a few scripted successes; produces
// a buffer where reward-1 transitions are a rare minority.
TransitionBuffer generate_maze_mixture_dataset(GridMazeEnv& env,
                                               int n_random_traj,
                                               int n_expert_traj,
                                               double expert_noise_std,
                                               Rng& rng);

}  // namespace ooo
