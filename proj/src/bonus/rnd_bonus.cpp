#include "ooo/bonus/rnd_bonus.hpp"

#include <cmath>

#include "ooo/nn/checkpoint.hpp"

namespace ooo {

RndBonus::RndBonus(int state_dim, const RndConfig& cfg, Rng& init_rng)
    : cfg_(cfg),
      predictor_(state_dim, cfg.hidden, cfg.embed_dim),
      target_(state_dim, cfg.hidden, cfg.embed_dim),
      opt_(AdamConfig{cfg.lr, 0.9, 0.999, 1e-8}),
      obs_moments_(state_dim),
      reward_moments_(1) {
  require(cfg.embed_dim > 0, "RndBonus: embed_dim must be positive");
  require(cfg.train_proportion >= 0.0 && cfg.train_proportion <= 1.0,
          "RndBonus: train_proportion outside [0,1]");
  target_.init(init_rng);
  predictor_.init(init_rng);
  sample_rng_ = make_rng(init_rng(), "rnd-subsample");
}

void RndBonus::clone_predictor_from_target() {
  auto dst = predictor_.params();
  const MlpNet& ct = target_;
  auto src = ct.params();
  for (std::size_t i = 0; i < dst.size(); ++i)
    for (int j = 0; j < dst[i].size(); ++j) dst[i].data[j] = src[i].data[j];
}

Vec RndBonus::raw_rows(const Mat& states) const {
  const Mat z = obs_moments_.normalize_rows(states);
  const Mat diff = predictor_.forward_const(z) - target_.forward_const(z);
  return diff.rowwise().squaredNorm();
}

double RndBonus::raw(const Vec& state) const {
  return raw_rows(state.transpose())(0);
}

double RndBonus::term(const Vec& state, const Vec&) const {
  if (cfg_.coefficient == 0.0) return 0.0;
  return cfg_.coefficient * reward_moments_.scale(raw(state));
}

Vec RndBonus::terms(const Mat& states, const Mat&) const {
  if (cfg_.coefficient == 0.0) return Vec::Zero(states.rows());
  const Vec r = raw_rows(states);
  Vec out(r.size());
  for (int i = 0; i < r.size(); ++i) out(i) = reward_moments_.scale(r(i));
  return cfg_.coefficient * out;
}

void RndBonus::train(const Mat& state_batch) {
  const int n = static_cast<int>(state_batch.rows());
  require(n > 0, "RndBonus::train: empty batch");
  obs_moments_.observe_rows(state_batch);

  // reward moments track the raw error of everything seen in training
  const Vec raw_all = raw_rows(state_batch);
  for (int i = 0; i < n; ++i) {
    Vec r1(1);
    r1 << raw_all(i);
    reward_moments_.observe(r1);
  }

  const int k = train_sample_count(cfg_.train_proportion, n);
  if (k == 0) return;

  // partial Fisher-Yates for k distinct rows
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    std::uniform_int_distribution<int> pick(i, n - 1);
    std::swap(idx[static_cast<std::size_t>(i)],
              idx[static_cast<std::size_t>(pick(sample_rng_))]);
  }
  Mat subset(k, state_batch.cols());
  for (int i = 0; i < k; ++i)
    subset.row(i) = state_batch.row(idx[static_cast<std::size_t>(i)]);

  const Mat z = obs_moments_.normalize_rows(subset);
  predictor_.zero_grad();
  const Mat pred = predictor_.forward(z);
  const Mat diff = pred - target_.forward_const(z);
  require(diff.allFinite(), "RndBonus::train: non-finite loss");
  predictor_.backward(2.0 * diff / static_cast<double>(k));
  opt_.step(predictor_.params(), predictor_.grads());
}

std::uint64_t RndBonus::target_hash() const {
  const MlpNet& ct = target_;
  return param_hash(ct.params("target."));
}

std::uint64_t RndBonus::predictor_hash() const {
  const MlpNet& cp = predictor_;
  return param_hash(cp.params("predictor."));
}

int RndBonus::train_sample_count(double proportion, int n) {
  if (proportion == 0.0) return 0;
  return std::min(n, static_cast<int>(std::ceil(proportion * n)));
}

}  // namespace ooo
