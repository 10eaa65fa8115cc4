#include "ooo/nn/running_moments.hpp"

namespace ooo {

void RunningMoments::observe(const Vec& x) {
  require(x.size() == mean_.size(), "RunningMoments::observe: dim mismatch");
  n_ += 1.0;
  const Vec delta = x - mean_;
  mean_ += delta / n_;
  m2_ += delta.cwiseProduct(x - mean_);
}

void RunningMoments::observe_rows(const Mat& xs) {
  for (int r = 0; r < xs.rows(); ++r) observe(xs.row(r).transpose());
}

void RunningMoments::merge(const RunningMoments& other) {
  require(other.mean_.size() == mean_.size(),
          "RunningMoments::merge: dim mismatch");
  if (other.n_ == 0.0) return;
  if (n_ == 0.0) {
    *this = other;
    return;
  }
  const double n = n_ + other.n_;
  const Vec delta = other.mean_ - mean_;
  mean_ += delta * (other.n_ / n);
  m2_ += other.m2_ + delta.cwiseProduct(delta) * (n_ * other.n_ / n);
  n_ = n;
}

Vec RunningMoments::variance() const {
  if (n_ == 0.0) return Vec::Zero(mean_.size());
  return (m2_ / n_).cwiseMax(0.0);
}

Vec RunningMoments::stddev() const {
  return variance().cwiseSqrt().cwiseMax(kStdFloor);
}

Vec RunningMoments::normalize(const Vec& x) const {
  require(x.size() == mean_.size(), "RunningMoments::normalize: dim mismatch");
  if (n_ == 0.0) return x;
  return (x - mean_).cwiseQuotient(stddev());
}

Mat RunningMoments::normalize_rows(const Mat& xs) const {
  require(xs.cols() == mean_.size(),
          "RunningMoments::normalize_rows: dim mismatch");
  if (n_ == 0.0) return xs;
  Mat out = xs;
  out.rowwise() -= mean_.transpose();
  out.array().rowwise() /= stddev().transpose().array();
  return out;
}

double RunningMoments::scale(double x) const {
  require(mean_.size() == 1, "RunningMoments::scale: scalar moments required");
  if (n_ == 0.0) return x;
  return x / stddev()(0);
}

}  // namespace ooo
