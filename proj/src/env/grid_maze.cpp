#include "ooo/env/grid_maze.hpp"

#include <cmath>

namespace ooo {

GridMazeConfig default_grid_maze() {
  GridMazeConfig cfg;
  cfg.rows = {
      "##########",
      "#S...#...#",
      "###..#.#.#",
      "#....#.#.#",
      "#.####.#.#",
      "#......#G#",
      "##########",
  };
  return cfg;
}

GridMazeEnv::GridMazeEnv(GridMazeConfig cfg) : cfg_(std::move(cfg)) {
  height_ = static_cast<int>(cfg_.rows.size());
  require(height_ > 0, "GridMazeEnv: empty layout");
  width_ = static_cast<int>(cfg_.rows[0].size());
  for (int y = 0; y < height_; ++y) {
    require(static_cast<int>(cfg_.rows[y].size()) == width_,
            "GridMazeEnv: ragged layout rows");
    for (int x = 0; x < width_; ++x) {
      const char c = cfg_.rows[static_cast<std::size_t>(y)]
                             [static_cast<std::size_t>(x)];
      if (c == 'S') {
        require(start_x_ < 0, "GridMazeEnv: multiple start cells");
        start_x_ = x;
        start_y_ = y;
      } else if (c == 'G') {
        require(goal_x_ < 0, "GridMazeEnv: multiple goal cells");
        goal_x_ = x;
        goal_y_ = y;
      } else {
        require(c == '#' || c == '.', "GridMazeEnv: unknown cell character");
      }
    }
  }
  require(start_x_ >= 0, "GridMazeEnv: no start cell");
  require(goal_x_ >= 0, "GridMazeEnv: no goal cell");

  spec_.state_dim = 2;
  spec_.action_dim = 2;
  spec_.action_low = Vec::Constant(2, -1.0);
  spec_.action_high = Vec::Constant(2, 1.0);
  spec_.gamma = cfg_.gamma;
  spec_.horizon = cfg_.horizon;
  state_ = start_center();
}

bool GridMazeEnv::is_wall_cell(int cx, int cy) const {
  if (cx < 0 || cx >= width_ || cy < 0 || cy >= height_) return true;
  return cfg_.rows[static_cast<std::size_t>(cy)]
                  [static_cast<std::size_t>(cx)] == '#';
}

bool GridMazeEnv::is_wall_at(double x, double y) const {
  return is_wall_cell(static_cast<int>(std::floor(x)),
                      static_cast<int>(std::floor(y)));
}

Vec GridMazeEnv::start_center() const {
  Vec v(2);
  v << start_x_ + 0.5, start_y_ + 0.5;
  return v;
}

Vec GridMazeEnv::goal_center() const {
  Vec v(2);
  v << goal_x_ + 0.5, goal_y_ + 0.5;
  return v;
}

Vec GridMazeEnv::reset(Rng& rng) {
  state_ = start_center();
  if (cfg_.start_noise_std > 0.0) {
    std::normal_distribution<double> noise(0.0, cfg_.start_noise_std);
    Vec jittered = state_;
    jittered(0) += noise(rng);
    jittered(1) += noise(rng);
    if (!is_wall_at(jittered(0), jittered(1))) state_ = jittered;
  }
  steps_ = 0;
  return state_;
}

void GridMazeEnv::set_state(const Vec& s) {
  require(s.size() == 2, "GridMazeEnv::set_state: dim mismatch");
  require(!is_wall_at(s(0), s(1)), "GridMazeEnv::set_state: inside a wall");
  state_ = s;
  steps_ = 0;
}

StepResult GridMazeEnv::step(const Vec& action) {
  require(action.size() == 2, "GridMazeEnv::step: action dim mismatch");
  require(action.allFinite(), "GridMazeEnv::step: non-finite action");
  const Vec a = action.cwiseMin(1.0).cwiseMax(-1.0);

  Vec next = state_;
  const double nx = next(0) + cfg_.action_scale * a(0);
  if (!is_wall_at(nx, next(1))) next(0) = nx;
  const double ny = next(1) + cfg_.action_scale * a(1);
  if (!is_wall_at(next(0), ny)) next(1) = ny;

  ++steps_;
  StepResult r;
  r.next_state = next;
  const bool at_goal =
      static_cast<int>(std::floor(next(0))) == goal_x_ &&
      static_cast<int>(std::floor(next(1))) == goal_y_;
  r.reward = at_goal ? 1.0 : 0.0;
  r.terminal = at_goal;
  r.truncated = !at_goal && steps_ >= cfg_.horizon;
  state_ = next;
  return r;
}

}  // namespace ooo
