#include "ooo/env/scripted.hpp"

#include <cmath>
#include <deque>

namespace ooo {

Vec steer_action(const Vec& state, const Vec& target, double action_scale) {
  const Vec a = (target - state) / action_scale;
  return a.cwiseMin(1.0).cwiseMax(-1.0);
}

namespace {

constexpr double kWaypointTol = 0.05;

PolicyFn waypoint_then_goal(const PointMassWallEnv& env, double wp_x,
                            double wp_y) {
  Vec wp(2);
  wp << wp_x, wp_y;
  const Vec goal = env.goal();
  const double scale = env.action_scale();
  return [wp, goal, scale](const Vec& s, Rng&) {
    const bool past_wall = s(0) > PointMassWallEnv::kWallX;
    const bool at_wp = (s - wp).norm() < kWaypointTol;
    return steer_action(s, (past_wall || at_wp) ? goal : wp, scale);
  };
}

}  // namespace

PolicyFn over_wall_policy(const PointMassWallEnv& env) {
  // apex clears the wall top (1.2) before the route turns toward the goal
  return waypoint_then_goal(env, PointMassWallEnv::kWallX, 1.3);
}

PolicyFn under_wall_policy(const PointMassWallEnv& env) {
  // aim below the wall bottom (0.1) to slip through the gap
  return waypoint_then_goal(env, PointMassWallEnv::kWallX, 0.0);
}

PolicyFn maze_route_policy(const GridMazeEnv& env) {
  const int w = env.width();
  const int h = env.height();
  const auto [gx, gy] = env.goal_cell();
  std::vector<int> dist(static_cast<std::size_t>(w * h), -1);
  auto at = [w](int x, int y) { return static_cast<std::size_t>(y * w + x); };
  std::deque<std::pair<int, int>> queue{{gx, gy}};
  dist[at(gx, gy)] = 0;
  while (!queue.empty()) {
    const auto [cx, cy] = queue.front();
    queue.pop_front();
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int nx = cx + dx[k], ny = cy + dy[k];
      if (env.is_wall_cell(nx, ny) || dist[at(nx, ny)] >= 0) continue;
      dist[at(nx, ny)] = dist[at(cx, cy)] + 1;
      queue.push_back({nx, ny});
    }
  }
  const Vec start = env.start_center();
  require(dist[at(static_cast<int>(start(0)), static_cast<int>(start(1)))] >=
              0,
          "maze_route_policy: goal unreachable from start");

  const double scale = env.config().action_scale;
  return [&env, dist, at, scale](const Vec& s, Rng&) {
    const int cx = static_cast<int>(std::floor(s(0)));
    const int cy = static_cast<int>(std::floor(s(1)));
    const auto [goal_cx, goal_cy] = env.goal_cell();
    if (cx == goal_cx && cy == goal_cy) return Vec(Vec::Zero(2));
    int best_x = cx, best_y = cy;
    int best = dist[at(cx, cy)];
    const int dx[4] = {1, -1, 0, 0};
    const int dy[4] = {0, 0, 1, -1};
    for (int k = 0; k < 4; ++k) {
      const int nx = cx + dx[k], ny = cy + dy[k];
      if (env.is_wall_cell(nx, ny)) continue;
      const int d = dist[at(nx, ny)];
      if (d >= 0 && d < best) {
        best = d;
        best_x = nx;
        best_y = ny;
      }
    }
    Vec target(2);
    target << best_x + 0.5, best_y + 0.5;
    return steer_action(s, target, scale);
  };
}

}  // namespace ooo
