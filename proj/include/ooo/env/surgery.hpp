#pragma once

#include <vector>

#include "ooo/data/buffer.hpp"

namespace ooo {

// Drops every transition whose state lies strictly inside any ball
// (centers[i], radii[i]); distances on the state coordinates. Keeps
// trajectory boundaries of the survivors.
TransitionBuffer remove_near(const TransitionBuffer& buffer,
                             const std::vector<Vec>& centers,
                             const std::vector<double>& radii);

// Keeps only the first max_len transitions of each trajectory.
TransitionBuffer truncate_trajectories(const TransitionBuffer& buffer,
                                       int max_len);

}  // namespace ooo
