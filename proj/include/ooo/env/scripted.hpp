#pragma once

#include "ooo/env/grid_maze.hpp"
#include "ooo/env/point_mass.hpp"

namespace ooo {

// Full-speed steering toward a target, clamped to the unit action box.
Vec steer_action(const Vec& state, const Vec& target, double action_scale);

// Waypoint route over the wall top via an apex above it, then the goal.
PolicyFn over_wall_policy(const PointMassWallEnv& env);

// Shorter route through the gap under the wall; used as the optimal
// reference behavior the exploiter should discover.
PolicyFn under_wall_policy(const PointMassWallEnv& env);

// Follows cell-to-cell shortest-path distances computed by breadth-first
// search from the goal.
PolicyFn maze_route_policy(const GridMazeEnv& env);

}  // namespace ooo
