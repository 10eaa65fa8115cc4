#include <cmath>

#include "doctest.h"
#include "ooo/env/dataset_gen.hpp"
#include "ooo/env/grid_maze.hpp"
#include "ooo/env/point_mass.hpp"
#include "ooo/env/scripted.hpp"
#include "ooo/env/surgery.hpp"

using namespace ooo;

namespace {

PointMassWallEnv make_env(double noise = 0.02) {
  PointMassConfig cfg;
  cfg.start_noise_std = noise;
  return PointMassWallEnv(cfg);
}

bool inside_wall_band(const Vec& s) {
  return std::abs(s(0) - PointMassWallEnv::kWallX) < 1e-12 &&
         s(1) >= PointMassWallEnv::kWallYMin &&
         s(1) <= PointMassWallEnv::kWallYMax;
}

bool crosses_under_wall(const Vec& a, const Vec& b) {
  const double d0 = a(0) - PointMassWallEnv::kWallX;
  const double d1 = b(0) - PointMassWallEnv::kWallX;
  if ((d0 < 0) == (d1 < 0)) return false;
  const double t = -d0 / (b(0) - a(0));
  const double y = a(1) + t * (b(1) - a(1));
  return y < PointMassWallEnv::kWallYMin;
}

}  // namespace

TEST_CASE("reset: zero noise starts exactly at (0, 0.5)") {
  PointMassWallEnv env = make_env(0.0);
  Rng rng = make_rng(1, "reset0");
  const Vec s = env.reset(rng);
  CHECK(s(0) == 0.0);
  CHECK(s(1) == 0.5);
}

TEST_CASE("reset: start distribution centers on (0, 0.5)") {
  PointMassWallEnv env = make_env();
  Rng rng = make_rng(2, "resetmc");
  Vec mean = Vec::Zero(2);
  const int n = 10000;
  for (int i = 0; i < n; ++i) mean += env.reset(rng);
  mean /= n;
  CHECK(std::abs(mean(0) - 0.0) < 0.002);
  CHECK(std::abs(mean(1) - 0.5) < 0.002);
}

TEST_CASE("reset: maze agent appears at the start cell center") {
  GridMazeEnv env;
  Rng rng = make_rng(3, "mazereset");
  const Vec s = env.reset(rng);
  CHECK(s == env.start_center());
  CHECK(s(0) == 1.5);
  CHECK(s(1) == 1.5);
}

TEST_CASE("step: open ground moves by the action scale") {
  PointMassWallEnv env = make_env(0.0);
  Vec s(2);
  s << 0.45, 0.05;
  env.set_state(s);
  Vec a(2);
  a << 1.0, 0.0;
  const StepResult r = env.step(a);
  CHECK(r.next_state(0) ==
        doctest::Approx(0.45 + std::sqrt(0.5) * 0.05).epsilon(1e-12));
  CHECK(r.next_state(0) == doctest::Approx(0.4854).epsilon(1e-3));
  CHECK(r.next_state(1) == 0.05);
  CHECK(!r.terminal);
}

TEST_CASE("step: the wall face stops horizontal motion") {
  PointMassWallEnv env = make_env(0.0);
  Vec s(2);
  s << 0.48, 0.5;
  env.set_state(s);
  Vec a(2);
  a << 1.0, 0.0;
  const StepResult r = env.step(a);
  CHECK(r.next_state(0) < 0.5);
  CHECK(r.next_state(0) > 0.499);
  CHECK(r.next_state(1) == 0.5);
}

TEST_CASE("step: diagonal contact slides along the wall face") {
  PointMassWallEnv env = make_env(0.0);
  const double scale = env.action_scale();
  Vec s(2);
  s << 0.49, 0.5;
  env.set_state(s);
  Vec a(2);
  a << 1.0, 1.0;
  const StepResult r = env.step(a);
  // normal (x) motion pinned at the face, tangential (y) motion completes
  CHECK(r.next_state(0) < 0.5);
  CHECK(r.next_state(0) > 0.499);
  CHECK(r.next_state(1) == doctest::Approx(0.5 + scale).epsilon(1e-12));
}

TEST_CASE("step: pressing into the wall climbs it and rounds the top") {
  PointMassWallEnv env = make_env(0.0);
  Vec s(2);
  s << 0.49, 1.0;
  env.set_state(s);
  Vec a(2);
  a << 1.0, 1.0;
  Vec cur = s;
  bool crossed = false;
  for (int i = 0; i < 12 && !crossed; ++i) {
    cur = env.step(a).next_state;
    if (cur(0) > 0.5) crossed = true;
    CHECK(cur(1) >= 1.0);  // sliding keeps the upward progress
  }
  CHECK(crossed);
  CHECK(cur(1) > PointMassWallEnv::kWallYMax);
}

TEST_CASE("step: crossing above and below the wall is free") {
  PointMassWallEnv env = make_env(0.0);
  Vec s(2), a(2);
  s << 0.49, 1.3;  // above the wall top
  env.set_state(s);
  a << 1.0, 0.0;
  CHECK(env.step(a).next_state(0) > 0.5);

  s << 0.49, 0.05;  // below the wall bottom
  env.set_state(s);
  CHECK(env.step(a).next_state(0) > 0.5);
}

TEST_CASE("step: reaching the goal pays 1 and terminates") {
  PointMassWallEnv env = make_env(0.0);
  Vec s(2);
  s << 0.93, 0.15;
  env.set_state(s);
  Vec a(2);
  a << 1.0, 0.0;
  const StepResult r = env.step(a);
  CHECK(r.reward == 1.0);
  CHECK(r.terminal);
  CHECK(!r.truncated);
}

TEST_CASE("step: horizon exhaustion truncates without reward") {
  PointMassConfig cfg;
  cfg.start_noise_std = 0.0;
  cfg.horizon = 3;
  PointMassWallEnv env(cfg);
  Rng rng = make_rng(4, "horizon");
  env.reset(rng);
  Vec a(2);
  a << 0.0, 1.0;
  CHECK(!env.step(a).done());
  CHECK(!env.step(a).done());
  const StepResult last = env.step(a);
  CHECK(last.truncated);
  CHECK(!last.terminal);
  CHECK(last.reward == 0.0);
}

TEST_CASE("step: non-finite actions are rejected") {
  PointMassWallEnv env = make_env(0.0);
  Rng rng = make_rng(5, "nan");
  env.reset(rng);
  Vec a(2);
  a << std::numeric_limits<double>::infinity(), 0.0;
  CHECK_THROWS(env.step(a));
}

TEST_CASE("collision soundness: random walks never enter wall or leave arena") {
  PointMassWallEnv env = make_env();
  Rng rng = make_rng(6, "collision");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int ep = 0; ep < 20; ++ep) {
    Vec prev = env.reset(rng);
    for (int t = 0; t < 200; ++t) {
      Vec a(2);
      a << u(rng), u(rng);
      const StepResult r = env.step(a);
      const Vec& s = r.next_state;
      CHECK(!inside_wall_band(s));
      CHECK(s(0) >= PointMassWallEnv::kArenaXMin);
      CHECK(s(0) <= PointMassWallEnv::kArenaXMax);
      CHECK(s(1) >= PointMassWallEnv::kArenaYMin);
      CHECK(s(1) <= PointMassWallEnv::kArenaYMax);
      // no tunneling: any x-crossing happens outside the wall's span
      if ((prev(0) < 0.5) != (s(0) < 0.5)) {
        const double t_cross = (0.5 - prev(0)) / (s(0) - prev(0));
        const double y_cross = prev(1) + t_cross * (s(1) - prev(1));
        CHECK((y_cross < PointMassWallEnv::kWallYMin ||
               y_cross > PointMassWallEnv::kWallYMax));
      }
      prev = s;
      if (r.done()) break;
    }
  }
}

TEST_CASE("determinism: same seed gives bit-identical trajectories") {
  auto run = [](std::uint64_t seed) {
    PointMassWallEnv env = make_env();
    Rng rng = make_rng(seed, "det");
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> xs;
    env.reset(rng);
    for (int t = 0; t < 300; ++t) {
      Vec a(2);
      a << u(rng), u(rng);
      const StepResult r = env.step(a);
      xs.push_back(r.next_state(0));
      xs.push_back(r.next_state(1));
      if (r.done()) env.reset(rng);
    }
    return xs;
  };
  CHECK(run(77) == run(77));
  CHECK(run(77) != run(78));
}

TEST_CASE("scripted routes: both reach the goal, under-wall is shorter") {
  PointMassWallEnv env = make_env();
  Rng rng = make_rng(7, "routes");
  const EvalSummary over =
      evaluate_policy(env, over_wall_policy(env), 20, rng);
  const EvalSummary under =
      evaluate_policy(env, under_wall_policy(env), 20, rng);
  CHECK(over.success_rate == 1.0);
  CHECK(under.success_rate == 1.0);
  CHECK(under.mean_length < over.mean_length);
}

TEST_CASE("reward sparsity: episode returns are 0 or 1") {
  PointMassWallEnv env = make_env();
  Rng rng = make_rng(8, "sparsity");
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const PolicyFn wander = [&u](const Vec&, Rng& r) {
    Vec a(2);
    a << u(r), u(r);
    return a;
  };
  for (int ep = 0; ep < 10; ++ep) {
    const EpisodeResult res = rollout_episode(env, wander, rng);
    CHECK((res.ret == 0.0 || res.ret == 1.0));
    CHECK(res.length <= env.spec().horizon);
  }
  for (int ep = 0; ep < 5; ++ep) {
    const EpisodeResult res =
        rollout_episode(env, under_wall_policy(env), rng);
    CHECK(res.ret == 1.0);
    CHECK(res.success);
  }
}

TEST_CASE("evaluate: a frozen policy never succeeds") {
  PointMassWallEnv env = make_env();
  Rng rng = make_rng(9, "frozenpolicy");
  const PolicyFn still = [](const Vec&, Rng&) { return Vec(Vec::Zero(2)); };
  const EvalSummary r = evaluate_policy(env, still, 5, rng);
  CHECK(r.success_rate == 0.0);
  CHECK(r.mean_return == 0.0);
}

TEST_CASE("evaluate: zero episodes flag an empty aggregate") {
  PointMassWallEnv env = make_env();
  Rng rng = make_rng(10, "noeval");
  const EvalSummary r = evaluate_policy(env, over_wall_policy(env), 0, rng);
  CHECK(r.episodes == 0);
}

TEST_CASE("dataset: 100 noisy trajectories all pass over the wall") {
  PointMassWallEnv env = make_env();
  Rng rng = make_rng(11, "dataset");
  const TransitionBuffer buf =
      generate_suboptimal_dataset(env, 100, 0.1, rng);
  const auto trajs = buf.trajectories();
  REQUIRE(trajs.size() == 100);
  const double scale = env.action_scale();
  for (const auto& [begin, end] : trajs) {
    double max_y = -1e9;
    for (int i = begin; i < end; ++i) {
      const Transition& t = buf[i];
      max_y = std::max(max_y, std::max(t.state(1), t.next_state(1)));
      CHECK(!crosses_under_wall(t.state, t.next_state));
      // coverage gap: nothing near the wall line in the under-wall gap
      CHECK(!(std::abs(t.state(0) - 0.5) < scale &&
              t.state(1) < PointMassWallEnv::kWallYMin));
    }
    CHECK(max_y > PointMassWallEnv::kWallYMax);
  }
}

TEST_CASE("dataset: zero trajectories give an empty buffer") {
  PointMassWallEnv env = make_env();
  Rng rng = make_rng(12, "dataset0");
  CHECK(generate_suboptimal_dataset(env, 0, 0.1, rng).size() == 0);
}

TEST_CASE("dataset: noise-free trajectories from a fixed start coincide") {
  PointMassWallEnv env = make_env(0.0);
  Rng rng = make_rng(13, "datasetdet");
  const TransitionBuffer buf = generate_suboptimal_dataset(env, 3, 0.0, rng);
  const auto trajs = buf.trajectories();
  REQUIRE(trajs.size() == 3);
  const auto [b0, e0] = trajs[0];
  for (std::size_t k = 1; k < 3; ++k) {
    const auto [b, e] = trajs[k];
    REQUIRE(e - b == e0 - b0);
    for (int i = 0; i < e0 - b0; ++i) {
      CHECK(buf[b + i].state == buf[b0 + i].state);
      CHECK(buf[b + i].action == buf[b0 + i].action);
    }
  }
}

TEST_CASE("remove_near: radius 0 is a no-op, full cover empties") {
  TransitionBuffer buf(2, 2);
  for (int i = 0; i < 4; ++i) {
    Transition t;
    t.state = Vec(2);
    t.state << 1.0 + i, 0.0;  // distances 1,2,3,4 from origin
    t.action = Vec::Zero(2);
    t.reward = 0.0;
    t.next_state = t.state;
    t.terminal = false;
    buf.append(t);
  }
  buf.end_trajectory();
  Vec origin = Vec::Zero(2);

  const TransitionBuffer same = remove_near(buf, {origin}, {0.0});
  CHECK(same.size() == 4);

  const TransitionBuffer none = remove_near(buf, {origin}, {100.0});
  CHECK(none.size() == 0);

  const TransitionBuffer two = remove_near(buf, {origin}, {2.5});
  CHECK(two.size() == 2);
  CHECK(two[0].state(0) == 3.0);
  CHECK(two[1].state(0) == 4.0);

  // idempotence
  const TransitionBuffer again = remove_near(two, {origin}, {2.5});
  CHECK(again.size() == two.size());
  for (int i = 0; i < two.size(); ++i)
    CHECK(again[i].state == two[i].state);
}

TEST_CASE("truncate: trajectory lengths cap at the limit") {
  TransitionBuffer buf(2, 2);
  auto add_traj = [&buf](int len) {
    for (int i = 0; i < len; ++i) {
      Transition t;
      t.state = Vec::Constant(2, i);
      t.action = Vec::Zero(2);
      t.reward = 0.0;
      t.next_state = Vec::Constant(2, i + 1);
      buf.append(t);
    }
    buf.end_trajectory();
  };
  add_traj(5);
  add_traj(20);
  add_traj(40);

  const TransitionBuffer cut = truncate_trajectories(buf, 20);
  std::vector<int> lens;
  for (const auto& [b, e] : cut.trajectories()) lens.push_back(e - b);
  CHECK(lens == std::vector<int>{5, 20, 20});

  const TransitionBuffer untouched = truncate_trajectories(buf, 40);
  CHECK(untouched.size() == buf.size());

  const TransitionBuffer ones = truncate_trajectories(buf, 1);
  for (const auto& [b, e] : ones.trajectories()) CHECK(e - b == 1);
}

TEST_CASE("maze: walls cancel motion per axis and route policy succeeds") {
  GridMazeEnv env;
  Rng rng = make_rng(14, "maze");
  env.reset(rng);
  // two pushes straight up from the start hit the boundary wall: the
  // first lands on the cell edge (y = 1.0), the second is cancelled
  Vec up(2);
  up << 0.0, -1.0;
  CHECK(env.step(up).next_state(1) == 1.0);
  CHECK(env.step(up).next_state(1) == 1.0);

  // random walk never lands inside a wall cell
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int t = 0; t < 2000; ++t) {
    Vec a(2);
    a << u(rng), u(rng);
    const StepResult sr = env.step(a);
    CHECK(!env.is_wall_at(sr.next_state(0), sr.next_state(1)));
    if (sr.done()) env.reset(rng);
  }

  const EvalSummary route =
      evaluate_policy(env, maze_route_policy(env), 5, rng);
  CHECK(route.success_rate == 1.0);
}

TEST_CASE("maze: mixture dataset keeps successes a rare minority") {
  GridMazeEnv env;
  Rng rng = make_rng(15, "mixture");
  const TransitionBuffer buf =
      generate_maze_mixture_dataset(env, 50, 3, 0.05, rng);
  REQUIRE(buf.size() > 0);
  const double frac =
      static_cast<double>(buf.highrew_index().size()) / buf.size();
  CHECK(buf.highrew_index().size() >= 3);
  CHECK(frac <= 0.01);
  CHECK(buf.trajectories().size() == 53);
}
