#pragma once

#include "ooo/common.hpp"

namespace ooo {

// Streaming mean/variance (Welford updates, Chan merge). Population
// variance; std is floored so normalize never divides by ~0. With zero
// observations normalize is the identity.
class RunningMoments {
 public:
  static constexpr double kStdFloor = 1e-8;

  RunningMoments() = default;
  explicit RunningMoments(int dim)
      : mean_(Vec::Zero(dim)), m2_(Vec::Zero(dim)) {}

  void observe(const Vec& x);
  void observe_rows(const Mat& xs);
  void merge(const RunningMoments& other);

  double count() const { return n_; }
  int dim() const { return static_cast<int>(mean_.size()); }
  const Vec& mean() const { return mean_; }
  Vec variance() const;
  Vec stddev() const;  // floored at kStdFloor

  Vec normalize(const Vec& x) const;
  Mat normalize_rows(const Mat& xs) const;
  // Divide by std without centering; used for reward scaling.
  double scale(double x) const;

 private:
  double n_ = 0.0;
  Vec mean_;
  Vec m2_;
};

}  // namespace ooo
