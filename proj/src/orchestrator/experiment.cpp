#include "ooo/orchestrator/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace ooo {

namespace {

bool strictly_increasing(const std::vector<int>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) return false;
  }
  return true;
}

PolicyFn deterministic_policy(const LearnerState& st) {
  return [&st](const Vec& s, Rng& rng) {
    return st.act(s, ActMode::kDeterministic, rng);
  };
}

EvalSummary eval_on_fresh_env(const ExperimentConfig& cfg,
                              const LearnerState& st, std::string_view tag,
                              std::uint64_t index) {
  if (cfg.ooo.eval_episodes <= 0) return {};
  auto env = make_env(cfg);
  Rng rng = make_rng(cfg.ooo.seed, tag, index);
  return evaluate_policy(*env, deterministic_policy(st), cfg.ooo.eval_episodes,
                         rng);
}

double trailing_mean(const std::vector<double>& xs, int window) {
  const int n = static_cast<int>(xs.size());
  const int k = std::min(window, n);
  if (k == 0) return 0.0;
  return std::accumulate(xs.end() - k, xs.end(), 0.0) / k;
}

}  // namespace

void ExperimentConfig::validate() const {
  require(ooo.pretrain_steps >= 0, "pretrain_steps must be >= 0");
  require(ooo.online_budget >= 0, "online_budget must be >= 0");
  require(ooo.retrain_steps >= 0, "retrain_steps must be >= 0");
  require(ooo.eval_interval > 0, "eval_interval must be > 0");
  require(ooo.eval_episodes >= 0, "eval_episodes must be >= 0");
  require(ooo.intrinsic_window > 0, "intrinsic_window must be > 0");
  require(ooo.batch_size > 0, "batch_size must be > 0");
  require(ooo.bonus_coefficient >= 0.0, "bonus_coefficient must be >= 0");
  require(ooo.alpha_mix >= 0.0 && ooo.alpha_mix <= 1.0,
          "alpha_mix must lie in [0, 1]");
  require(strictly_increasing(ooo.retrain_schedule),
          "retrain_schedule must be strictly increasing");
  for (int t : ooo.retrain_schedule) {
    require(t >= 0 && t <= ooo.online_budget,
            "retrain checkpoints must lie in [0, online_budget]");
  }
  require(count_bin_width > 0.0, "count_bin_width must be > 0");
  require(count_action_bin_width > 0.0, "count_action_bin_width must be > 0");
  require(env_name == "point_mass" || env_name == "grid_maze" ||
              env_name == "single_state",
          "unknown env_name: " + env_name);
  if (ooo.frozen_rnd_retrain) {
    require(ooo.bonus_kind == BonusKind::kRnd,
            "frozen_rnd_retrain needs an rnd bonus");
    require(ooo.exploitation_learner == ExploitKind::kIql,
            "frozen_rnd_retrain needs the expectile exploiter");
  }
  if (ooo.warm_start_retrain || ooo.sync_exploiter_back) {
    require(ooo.exploitation_learner == ExploitKind::kIql,
            "warm start and sync need the expectile exploiter");
  }
}

StateHistogram::StateHistogram(double bin_width) : width_(bin_width) {
  require(bin_width > 0.0, "histogram bin width must be > 0");
}

void StateHistogram::observe(const Vec& state) {
  std::vector<long long> key(static_cast<std::size_t>(state.size()));
  for (int i = 0; i < state.size(); ++i) {
    key[static_cast<std::size_t>(i)] =
        static_cast<long long>(std::floor(state(i) / width_));
  }
  ++bins_[key];
}

long StateHistogram::count(const Vec& state) const {
  std::vector<long long> key(static_cast<std::size_t>(state.size()));
  for (int i = 0; i < state.size(); ++i) {
    key[static_cast<std::size_t>(i)] =
        static_cast<long long>(std::floor(state(i) / width_));
  }
  auto it = bins_.find(key);
  return it == bins_.end() ? 0 : it->second;
}

std::unique_ptr<Env> make_env(const ExperimentConfig& cfg) {
  if (cfg.env_name == "point_mass") {
    return std::make_unique<PointMassWallEnv>(cfg.point_mass);
  }
  if (cfg.env_name == "grid_maze") {
    return std::make_unique<GridMazeEnv>(cfg.grid_maze);
  }
  if (cfg.env_name == "single_state") {
    return std::make_unique<SingleStateEnv>(cfg.single_state);
  }
  throw std::runtime_error("unknown env_name: " + cfg.env_name);
}

std::unique_ptr<Bonus> make_bonus(const ExperimentConfig& cfg, int state_dim,
                                  Rng& init_rng) {
  switch (cfg.ooo.bonus_kind) {
    case BonusKind::kNone:
      return std::make_unique<ZeroBonus>();
    case BonusKind::kCount: {
      CountBonusConfig c;
      c.coefficient = cfg.ooo.bonus_coefficient;
      c.bin_width = cfg.count_bin_width;
      c.action_bin_width = cfg.count_action_bin_width;
      return std::make_unique<CountBonus>(c);
    }
    case BonusKind::kRnd: {
      RndConfig c = cfg.rnd;
      c.coefficient = cfg.ooo.bonus_coefficient;
      return std::make_unique<RndBonus>(state_dim, c, init_rng);
    }
  }
  throw std::runtime_error("unknown bonus kind");
}

LearnerState make_explore_learner(const ExperimentConfig& cfg, int state_dim,
                                  int action_dim, Rng& init_rng) {
  return LearnerState::make_iql(state_dim, action_dim, cfg.widths, cfg.iql,
                                init_rng);
}

TrainDiagnostics pretrain(const ExperimentConfig& cfg,
                          const TransitionBuffer& d_off, LearnerState& explore,
                          Bonus& bonus, Rng& learner_rng) {
  for (int i = 0; i < d_off.size(); ++i) {
    bonus.observe(d_off[i].state, d_off[i].action);
  }
  TrainDiagnostics diag;
  if (cfg.ooo.pretrain_steps == 0) return diag;
  require(!d_off.empty(), "pretraining needs a non-empty offline buffer");

  const MergedView view(d_off);
  const SamplerConfig sampler{0.0, cfg.ooo.batch_size};
  ZeroBonus inactive;
  Bonus& b = cfg.ooo.pretrain_bonus_active ? bonus
                                           : static_cast<Bonus&>(inactive);
  for (int i = 0; i < cfg.ooo.pretrain_steps; ++i) {
    diag = opt_update(explore, view, b, sampler, learner_rng);
  }
  return diag;
}

void online_phase(const ExperimentConfig& cfg, Env& env, LearnerState& explore,
                  const TransitionBuffer& d_off, Bonus& bonus,
                  TransitionBuffer& d_on, RunRecord& record, Rng& learner_rng,
                  Rng& env_rng, const std::function<void(int)>& on_step,
                  const PointCallback& on_point) {
  const MergedView view(d_off, d_on);
  const SamplerConfig sampler{0.0, cfg.ooo.batch_size};
  TrainDiagnostics last_diag;

  bool need_reset = true;
  Vec s;
  for (int t = 1; t <= cfg.ooo.online_budget; ++t) {
    if (need_reset) {
      s = env.reset(env_rng);
      record.visitation.observe(s);
      need_reset = false;
    }
    const Vec a = explore.act(s, ActMode::kStochastic, learner_rng);
    // intrinsic value of the visited pair before its own visit lands
    record.intrinsic_per_step.push_back(bonus.term(s, a));
    bonus.observe(s, a);
    const StepResult res = env.step(a);
    ++record.env_steps;

    Transition tr;
    tr.state = s;
    tr.action = a;
    tr.reward = res.reward;
    tr.next_state = res.next_state;
    tr.terminal = res.terminal;
    d_on.append(tr);
    if (res.done()) {
      d_on.end_trajectory();
      need_reset = true;
    } else {
      s = res.next_state;
    }
    record.visitation.observe(res.next_state);

    last_diag = opt_update(explore, view, bonus, sampler, learner_rng);

    if (t % cfg.ooo.eval_interval == 0 || t == cfg.ooo.online_budget) {
      EvalPoint p;
      p.step = t;
      p.phase = "online";
      p.explore_eval = eval_on_fresh_env(cfg, explore, "eval",
                                         static_cast<std::uint64_t>(t));
      p.mean_intrinsic_window =
          trailing_mean(record.intrinsic_per_step, cfg.ooo.intrinsic_window);
      p.explore_hash = explore.hash();
      p.diag = last_diag;
      record.final_explore_eval = p.explore_eval;
      record.points.push_back(std::move(p));
      if (on_point) on_point(record.points.back());
    }
    if (on_step) on_step(t);
  }
}

LearnerState offline_retrain(
    const ExperimentConfig& cfg, const TransitionBuffer& d_off,
    const TransitionBuffer& d_on, int checkpoint_index,
    const FrozenBonus* frozen_bonus, const LearnerState* warm_start_from,
    std::vector<std::pair<int, TrainDiagnostics>>* diag_trace) {
  const MergedView view(d_off, d_on);
  require(view.size() > 0, "retraining needs data");
  const int state_dim = view.state_dim();
  const int action_dim = view.action_dim();

  Rng rng = make_rng(cfg.ooo.seed, "retrain",
                     static_cast<std::uint64_t>(checkpoint_index));
  const SamplerConfig sampler{cfg.ooo.alpha_mix, cfg.ooo.batch_size};

  if (cfg.ooo.exploitation_learner == ExploitKind::kTd3) {
    require(frozen_bonus == nullptr && warm_start_from == nullptr,
            "the deterministic-actor exploiter always retrains fresh on "
            "extrinsic rewards");
    LearnerState exploit = LearnerState::make_td3(state_dim, action_dim,
                                                  cfg.widths, cfg.td3, rng);
    for (int i = 1; i <= cfg.ooo.retrain_steps; ++i) {
      const TrainDiagnostics d = td3_update(exploit, view, sampler, rng);
      if (diag_trace) diag_trace->emplace_back(i, d);
    }
    return exploit;
  }

  LearnerState exploit = LearnerState::make_iql(state_dim, action_dim,
                                                cfg.widths, cfg.iql, rng);
  if (warm_start_from) copy_parameters(exploit, *warm_start_from);
  if (frozen_bonus) {
    FrozenBonus local = *frozen_bonus;
    for (int i = 1; i <= cfg.ooo.retrain_steps; ++i) {
      const TrainDiagnostics d = opt_update(exploit, view, local, sampler, rng);
      if (diag_trace) diag_trace->emplace_back(i, d);
    }
  } else {
    for (int i = 1; i <= cfg.ooo.retrain_steps; ++i) {
      const TrainDiagnostics d = pessm_update(exploit, view, sampler, rng);
      if (diag_trace) diag_trace->emplace_back(i, d);
    }
  }
  return exploit;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const TransitionBuffer& d_off,
                                const PointCallback& on_point) {
  cfg.validate();

  auto env = make_env(cfg);
  const int state_dim = env->spec().state_dim;
  const int action_dim = env->spec().action_dim;
  require(d_off.empty() || (d_off.state_dim() == state_dim &&
                            d_off.action_dim() == action_dim),
          "offline buffer dimensions must match the environment");

  Rng init_rng = make_rng(cfg.ooo.seed, "init");
  auto bonus = make_bonus(cfg, state_dim, init_rng);
  ExperimentResult result;
  result.explore = make_explore_learner(cfg, state_dim, action_dim, init_rng);
  Rng learner_rng = make_rng(cfg.ooo.seed, "learner");
  Rng env_rng = make_rng(cfg.ooo.seed, "env");

  result.record.bonus_kind = cfg.ooo.bonus_kind;
  result.record.visitation = StateHistogram(cfg.count_bin_width);
  result.d_on = TransitionBuffer(state_dim, action_dim);

  const TrainDiagnostics pre_diag =
      pretrain(cfg, d_off, result.explore, *bonus, learner_rng);
  {
    EvalPoint p;
    p.step = 0;
    p.phase = "pretrain";
    p.explore_eval = eval_on_fresh_env(cfg, result.explore, "eval", 0);
    p.explore_hash = result.explore.hash();
    p.diag = pre_diag;
    result.record.final_explore_eval = p.explore_eval;
    result.record.points.push_back(std::move(p));
    if (on_point) on_point(result.record.points.back());
  }

  std::vector<int> schedule = cfg.ooo.retrain_schedule;
  if (schedule.empty()) schedule = {cfg.ooo.online_budget};

  const auto do_retrain = [&](int t, int index) {
    LearnerState exploit = [&] {
      if (cfg.ooo.frozen_rnd_retrain) {
        const auto* rnd = dynamic_cast<const RndBonus*>(bonus.get());
        require(rnd != nullptr, "frozen_rnd_retrain needs a live rnd bonus");
        const FrozenBonus snapshot = freeze(*rnd);
        return offline_retrain(cfg, d_off, result.d_on, index, &snapshot,
                               nullptr, nullptr);
      }
      const LearnerState* warm =
          cfg.ooo.warm_start_retrain ? &result.explore : nullptr;
      return offline_retrain(cfg, d_off, result.d_on, index, nullptr, warm,
                             nullptr);
    }();
    const EvalSummary exploit_eval = eval_on_fresh_env(
        cfg, exploit, "retrain-eval", static_cast<std::uint64_t>(index));
    if (!result.record.points.empty() &&
        result.record.points.back().step == t) {
      result.record.points.back().exploit_eval = exploit_eval;
      if (on_point) {
        EvalPoint delta;
        delta.step = t;
        delta.phase = "retrain";
        delta.exploit_eval = exploit_eval;
        on_point(delta);
      }
    } else {
      EvalPoint p;
      p.step = t;
      p.phase = "retrain";
      p.exploit_eval = exploit_eval;
      p.mean_intrinsic_window = trailing_mean(
          result.record.intrinsic_per_step, cfg.ooo.intrinsic_window);
      p.explore_hash = result.explore.hash();
      result.record.points.push_back(std::move(p));
      if (on_point) on_point(result.record.points.back());
    }
    result.record.final_exploit_eval = exploit_eval;
    result.exploit = std::move(exploit);
    result.has_exploit = true;
    if (cfg.ooo.sync_exploiter_back) {
      copy_parameters(result.explore, result.exploit);
    }
  };

  int next_checkpoint = 0;
  const int n_checkpoints = static_cast<int>(schedule.size());
  if (cfg.ooo.retrain_enabled) {
    while (next_checkpoint < n_checkpoints &&
           schedule[static_cast<std::size_t>(next_checkpoint)] == 0) {
      do_retrain(0, next_checkpoint);
      ++next_checkpoint;
    }
  }

  const auto hook = [&](int t) {
    if (!cfg.ooo.retrain_enabled) return;
    while (next_checkpoint < n_checkpoints &&
           schedule[static_cast<std::size_t>(next_checkpoint)] == t) {
      do_retrain(t, next_checkpoint);
      ++next_checkpoint;
    }
  };

  online_phase(cfg, *env, result.explore, d_off, *bonus, result.d_on,
               result.record, learner_rng, env_rng, hook, on_point);

  for (std::size_t i = 1; i < result.record.points.size(); ++i) {
    require(result.record.points[i].step > result.record.points[i - 1].step,
            "evaluation points must advance strictly in time");
  }
  return result;
}

std::vector<std::pair<int, double>> intrinsic_trace(const RunRecord& record) {
  require(record.bonus_kind != BonusKind::kNone,
          "intrinsic trace needs a run that used a bonus");
  std::vector<std::pair<int, double>> out;
  for (const EvalPoint& p : record.points) {
    if (p.step > 0) out.emplace_back(p.step, p.mean_intrinsic_window);
  }
  return out;
}

}  // namespace ooo
