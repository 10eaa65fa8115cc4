#pragma once

#include "ooo/common.hpp"

namespace ooo {

// Exploration bonus: term() is the coefficient-scaled intrinsic value
// added on top of the extrinsic reward. Training hooks default to no-ops
// so frozen or trivial bonuses need not override them.
class Bonus {
 public:
  virtual ~Bonus() = default;

  virtual double term(const Vec& state, const Vec& action) const = 0;
  virtual Vec terms(const Mat& states, const Mat& actions) const;

  virtual void observe(const Vec& state, const Vec& action);
  // Any randomness a bonus needs (e.g. subset selection) is internal
  // state, so training a bonus never perturbs the caller's rng stream.
  virtual void train(const Mat& state_batch);
};

class ZeroBonus : public Bonus {
 public:
  double term(const Vec&, const Vec&) const override { return 0.0; }
};

inline double combined_reward(const Bonus& bonus, double r_ext, const Vec& s,
                              const Vec& a) {
  return r_ext + bonus.term(s, a);
}

inline Vec combined_rewards(const Bonus& bonus, const Vec& r_ext,
                            const Mat& states, const Mat& actions) {
  return r_ext + bonus.terms(states, actions);
}

}  // namespace ooo
