#include "ooo/env/point_mass.hpp"

#include <cmath>

namespace ooo {

PointMassWallEnv::PointMassWallEnv(PointMassConfig cfg)
    : cfg_(cfg), action_scale_(std::sqrt(0.5) * 0.05) {
  spec_.state_dim = 2;
  spec_.action_dim = 2;
  spec_.action_low = Vec::Constant(2, -1.0);
  spec_.action_high = Vec::Constant(2, 1.0);
  spec_.gamma = cfg.gamma;
  spec_.horizon = cfg.horizon;
  state_ = Vec::Zero(2);
  state_ << 0.0, 0.5;
}

Vec PointMassWallEnv::goal() const {
  Vec g(2);
  g << 1.0, 0.15;
  return g;
}

Vec PointMassWallEnv::reset(Rng& rng) {
  std::normal_distribution<double> noise(0.0, 1.0);
  state_.resize(2);
  state_(0) = 0.0 + cfg_.start_noise_std * noise(rng);
  state_(1) = 0.5 + cfg_.start_noise_std * noise(rng);
  state_(0) = std::clamp(state_(0), kArenaXMin, kArenaXMax);
  state_(1) = std::clamp(state_(1), kArenaYMin, kArenaYMax);
  steps_ = 0;
  return state_;
}

void PointMassWallEnv::set_state(const Vec& s) {
  require(s.size() == 2, "PointMassWallEnv::set_state: dim mismatch");
  state_ = s;
  steps_ = 0;
}

Vec PointMassWallEnv::move_with_wall(const Vec& from, const Vec& delta) {
  Vec to = from + delta;
  const double dx0 = from(0) - kWallX;
  const double dx1 = to(0) - kWallX;
  // crossing or landing on the wall line
  if ((dx0 < 0.0 && dx1 >= 0.0) || (dx0 > 0.0 && dx1 <= 0.0)) {
    const double t = (kWallX - from(0)) / delta(0);
    const double y_cross = from(1) + t * delta(1);
    if (y_cross >= kWallYMin && y_cross <= kWallYMax) {
      // contact: the normal (x) motion stops a hair short of the line on
      // the approach side; the tangential (y) motion slides to completion
      to(0) = dx0 < 0.0 ? kWallX - kContactEps : kWallX + kContactEps;
    }
  }
  return to;
}

StepResult PointMassWallEnv::step(const Vec& action) {
  require(action.size() == 2, "PointMassWallEnv::step: action dim mismatch");
  require(action.allFinite(), "PointMassWallEnv::step: non-finite action");
  Vec a = action.cwiseMin(1.0).cwiseMax(-1.0);
  Vec next = move_with_wall(state_, action_scale_ * a);
  next(0) = std::clamp(next(0), kArenaXMin, kArenaXMax);
  next(1) = std::clamp(next(1), kArenaYMin, kArenaYMax);

  ++steps_;
  StepResult r;
  r.next_state = next;
  const bool at_goal = (next - goal()).norm() <= cfg_.goal_radius;
  r.reward = at_goal ? 1.0 : 0.0;
  r.terminal = at_goal;
  r.truncated = !at_goal && steps_ >= cfg_.horizon;
  state_ = next;
  return r;
}

bool under_wall_crossing(const std::vector<Transition>& trajectory) {
  constexpr double wall_x = PointMassWallEnv::kWallX;
  constexpr double wall_y_min = PointMassWallEnv::kWallYMin;
  for (const Transition& t : trajectory) {
    const double x1 = t.state(0), y1 = t.state(1);
    const double x2 = t.next_state(0), y2 = t.next_state(1);
    const bool crosses =
        (x1 < wall_x && x2 > wall_x) || (x1 > wall_x && x2 < wall_x);
    if (!crosses) continue;
    const double y_cross = y1 + (y2 - y1) * (wall_x - x1) / (x2 - x1);
    if (y_cross < wall_y_min) return true;
  }
  return false;
}

}  // namespace ooo
