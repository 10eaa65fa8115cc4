#pragma once

#include "ooo/env/env.hpp"

namespace ooo {

struct PointMassConfig {
  double start_noise_std = 0.02;
  double goal_radius = 0.1;
  double gamma = 0.99;
  int horizon = 100;
};

// Planar navigation with a vertical wall between start and goal. The
// agent starts near (0, 0.5), the goal sits at (1, 0.15), and the wall
// occupies x = 0.5, y in [0.1, 1.2]. Two routes exist: a long one over
// the wall top and a short one through the gap under it.
class PointMassWallEnv : public Env {
 public:
  static constexpr double kWallX = 0.5;
  static constexpr double kWallYMin = 0.1;
  static constexpr double kWallYMax = 1.2;
  static constexpr double kArenaXMin = -0.25;
  static constexpr double kArenaXMax = 1.25;
  static constexpr double kArenaYMin = -0.25;
  static constexpr double kArenaYMax = 1.45;
  // wall-contact standoff; keeps positions strictly off the wall line
  static constexpr double kContactEps = 1e-9;

  explicit PointMassWallEnv(PointMassConfig cfg = {});

  const MdpSpec& spec() const override { return spec_; }
  Vec reset(Rng& rng) override;
  StepResult step(const Vec& action) override;
  const Vec& state() const override { return state_; }
  void set_state(const Vec& s) override;

  double action_scale() const { return action_scale_; }
  Vec goal() const;
  const PointMassConfig& config() const { return cfg_; }

  // Moves from `from` by `delta` with wall clipping (no arena clip).
  static Vec move_with_wall(const Vec& from, const Vec& delta);

 private:
  PointMassConfig cfg_;
  MdpSpec spec_;
  double action_scale_;
  Vec state_;
  int steps_ = 0;
};

// True when any step segment crosses the wall line x = 0.5 below the
// wall bottom (y < 0.1). Successful trajectories that are not under-wall
// necessarily went over the top.
bool under_wall_crossing(const std::vector<Transition>& trajectory);

}  // namespace ooo
