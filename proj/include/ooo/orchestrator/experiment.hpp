#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ooo/bonus/count_bonus.hpp"
#include "ooo/bonus/rnd_bonus.hpp"
#include "ooo/data/buffer.hpp"
#include "ooo/env/env.hpp"
#include "ooo/env/grid_maze.hpp"
#include "ooo/env/point_mass.hpp"
#include "ooo/env/single_state.hpp"
#include "ooo/learners/learner.hpp"

namespace ooo {

enum class BonusKind { kNone, kCount, kRnd };
enum class ExploitKind { kIql, kTd3 };

// Regimen schedule and ablation switches: offline pretraining of an
// optimistic explorer, an online collection budget, and lazily scheduled
// pessimistic retraining of a separate exploiter.
struct OooConfig {
  int pretrain_steps = 25000;
  int online_budget = 50000;  // K environment steps
  int retrain_steps = 200000;
  // Online-step checkpoints that trigger retraining; empty means {K}.
  std::vector<int> retrain_schedule;
  bool retrain_enabled = true;
  int eval_interval = 5000;
  int eval_episodes = 20;
  int intrinsic_window = 1000;

  BonusKind bonus_kind = BonusKind::kRnd;
  double bonus_coefficient = 5.0;
  bool pretrain_bonus_active = true;

  double alpha_mix = 0.0;  // reward-1 upsampling during retraining
  int batch_size = 256;

  bool frozen_rnd_retrain = false;
  bool warm_start_retrain = false;
  bool sync_exploiter_back = false;
  ExploitKind exploitation_learner = ExploitKind::kIql;

  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  OooConfig ooo;
  IqlConfig iql;
  Td3Config td3;
  NetWidths widths;
  RndConfig rnd;  // coefficient comes from ooo.bonus_coefficient
  double count_bin_width = 0.05;
  double count_action_bin_width = 2.0;

  std::string env_name = "point_mass";  // point_mass | grid_maze | single_state
  PointMassConfig point_mass;
  GridMazeConfig grid_maze = default_grid_maze();
  SingleStateConfig single_state;

  void validate() const;
};

// Visit counts over states binned at a fixed width per dimension.
class StateHistogram {
 public:
  StateHistogram() = default;
  explicit StateHistogram(double bin_width);

  void observe(const Vec& state);
  long count(const Vec& state) const;
  double bin_width() const { return width_; }
  std::size_t size() const { return bins_.size(); }
  const std::map<std::vector<long long>, long>& bins() const { return bins_; }

 private:
  double width_ = 0.05;
  std::map<std::vector<long long>, long> bins_;
};

struct EvalPoint {
  int step = 0;               // online steps elapsed (0 = after pretraining)
  std::string phase;          // pretrain | online | retrain
  EvalSummary explore_eval;   // episodes == 0 when not evaluated here
  EvalSummary exploit_eval;   // episodes == 0 when no retrain at this step
  double mean_intrinsic_window = 0.0;
  std::uint64_t explore_hash = 0;
  TrainDiagnostics diag;
};

struct RunRecord {
  BonusKind bonus_kind = BonusKind::kNone;
  std::vector<EvalPoint> points;
  StateHistogram visitation;  // every state visited during the online phase
  std::vector<double> intrinsic_per_step;
  long env_steps = 0;
  EvalSummary final_explore_eval;
  EvalSummary final_exploit_eval;
};

struct ExperimentResult {
  RunRecord record;
  LearnerState explore;
  LearnerState exploit;
  bool has_exploit = false;
  TransitionBuffer d_on;
};

std::unique_ptr<Env> make_env(const ExperimentConfig& cfg);
std::unique_ptr<Bonus> make_bonus(const ExperimentConfig& cfg, int state_dim,
                                  Rng& init_rng);
LearnerState make_explore_learner(const ExperimentConfig& cfg, int state_dim,
                                  int action_dim, Rng& init_rng);

// pretrain_steps optimistic updates on the offline data alone. Count
// tables are seeded with every offline state first. Returns the last
// step's diagnostics (default-constructed when steps == 0).
TrainDiagnostics pretrain(const ExperimentConfig& cfg,
                          const TransitionBuffer& d_off, LearnerState& explore,
                          Bonus& bonus, Rng& learner_rng);

// Fires once per freshly recorded evaluation point, in order, so a
// caller can stream metrics to disk as the run progresses. Exploiter
// evaluations arrive as points with phase "retrain" carrying only the
// exploitation summary, even when the record merges them into an
// existing step.
using PointCallback = std::function<void(const EvalPoint&)>;

// Interaction loop: stochastic explorer actions, one optimistic update
// per environment step on offline-plus-online data, auto resets,
// periodic deterministic evaluation. on_step (if set) runs after each
// step's update; retraining checkpoints hook in through it.
void online_phase(const ExperimentConfig& cfg, Env& env,
                  LearnerState& explore, const TransitionBuffer& d_off,
                  Bonus& bonus, TransitionBuffer& d_on, RunRecord& record,
                  Rng& learner_rng, Rng& env_rng,
                  const std::function<void(int)>& on_step = {},
                  const PointCallback& on_point = {});

// Trains a fresh exploiter on the fixed buffers with extrinsic rewards
// only; a frozen bonus snapshot, if given, adds its terms back in. Runs
// on its own rng substream keyed by checkpoint_index.
LearnerState offline_retrain(
    const ExperimentConfig& cfg, const TransitionBuffer& d_off,
    const TransitionBuffer& d_on, int checkpoint_index,
    const FrozenBonus* frozen_bonus = nullptr,
    const LearnerState* warm_start_from = nullptr,
    std::vector<std::pair<int, TrainDiagnostics>>* diag_trace = nullptr);

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const TransitionBuffer& d_off,
                                const PointCallback& on_point = {});

// (online step, mean intrinsic reward over the trailing window) series.
// Requires a run that had a bonus configured.
std::vector<std::pair<int, double>> intrinsic_trace(const RunRecord& record);

}  // namespace ooo
