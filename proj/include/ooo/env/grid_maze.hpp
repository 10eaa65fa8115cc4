#pragma once

#include <string>
#include <vector>

#include "ooo/env/env.hpp"

namespace ooo {

struct GridMazeConfig {
  // one string per row; '#' wall, '.' empty, 'S' start, 'G' goal
  std::vector<std::string> rows;
  double action_scale = 0.5;  // cells per unit action
  double start_noise_std = 0.0;
  double gamma = 0.99;
  int horizon = 100;
};

// Ten-by-seven layout with a single winding route from start to goal.
GridMazeConfig default_grid_maze();

// Continuous point agent in a cell grid. Positions live in grid units;
// a move that would land in a wall cell (or off the grid) is cancelled
// per axis. Entering the goal cell pays reward 1 and ends the episode.
class GridMazeEnv : public Env {
 public:
  explicit GridMazeEnv(GridMazeConfig cfg = default_grid_maze());

  const MdpSpec& spec() const override { return spec_; }
  Vec reset(Rng& rng) override;
  StepResult step(const Vec& action) override;
  const Vec& state() const override { return state_; }
  void set_state(const Vec& s) override;

  int width() const { return width_; }
  int height() const { return height_; }
  bool is_wall_cell(int cx, int cy) const;
  bool is_wall_at(double x, double y) const;
  Vec start_center() const;
  Vec goal_center() const;
  std::pair<int, int> goal_cell() const { return {goal_x_, goal_y_}; }
  const GridMazeConfig& config() const { return cfg_; }

 private:
  GridMazeConfig cfg_;
  MdpSpec spec_;
  int width_ = 0;
  int height_ = 0;
  int start_x_ = -1, start_y_ = -1;
  int goal_x_ = -1, goal_y_ = -1;
  Vec state_;
  int steps_ = 0;
};

}  // namespace ooo
