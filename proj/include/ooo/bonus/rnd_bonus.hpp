#pragma once

#include <vector>

#include "ooo/bonus/bonus.hpp"
#include "ooo/nn/adam.hpp"
#include "ooo/nn/mlp.hpp"
#include "ooo/nn/running_moments.hpp"

namespace ooo {

struct RndConfig {
  std::vector<int> hidden = {512, 512};
  int embed_dim = 64;
  double coefficient = 0.5;
  double train_proportion = 0.25;
  double lr = 3e-4;
};

// Random network distillation: intrinsic reward is the squared error of
// a trained predictor against a frozen random target, on states
// standardized by running moments. Rewards are scaled by their running
// std (no centering) so the optimism signal stays non-negative.
class RndBonus : public Bonus {
 public:
  RndBonus(int state_dim, const RndConfig& cfg, Rng& init_rng);

  // coefficient * normalized prediction error; the action is ignored
  double term(const Vec& state, const Vec& action) const override;
  Vec terms(const Mat& states, const Mat& actions) const override;

  // Updates observation/reward moments on the whole batch, then takes
  // one predictor gradient step on ceil(train_proportion * n) rows
  // drawn without replacement by an internal rng.
  void train(const Mat& state_batch) override;

  // prediction error before coefficient and normalization
  double raw(const Vec& state) const;
  Vec raw_rows(const Mat& states) const;

  std::uint64_t target_hash() const;
  std::uint64_t predictor_hash() const;
  const RndConfig& config() const { return cfg_; }
  double reward_std() const { return reward_moments_.stddev()(0); }

  // rows used per gradient step: ceil(proportion * n), capped at n
  static int train_sample_count(double proportion, int n);

  // exact-copy predictor, for the zero-reward identity check
  void clone_predictor_from_target();

 private:
  RndConfig cfg_;
  MlpNet predictor_;
  MlpNet target_;
  Adam opt_;
  RunningMoments obs_moments_;
  RunningMoments reward_moments_;
  Rng sample_rng_;
};

// Immutable snapshot: identical bonuses forever, training is a no-op.
class FrozenBonus : public Bonus {
 public:
  explicit FrozenBonus(const RndBonus& source) : source_(source) {}

  double term(const Vec& state, const Vec& action) const override {
    return source_.term(state, action);
  }
  Vec terms(const Mat& states, const Mat& actions) const override {
    return source_.terms(states, actions);
  }

 private:
  const RndBonus source_;  // private copy, never trained again
};

inline FrozenBonus freeze(const RndBonus& bonus) {
  return FrozenBonus(bonus);
}

}  // namespace ooo
