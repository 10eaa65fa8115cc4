#include <algorithm>
#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "ooo/bonus/count_bonus.hpp"
#include "ooo/bonus/rnd_bonus.hpp"
#include "ooo/learners/learner.hpp"
#include "ooo/nn/checkpoint.hpp"

using namespace ooo;

namespace {

// Scalar tau-expectile of a finite sample, by ternary search on the
// strictly convex objective sum_i l2tau(q_i - v). Independent of the
// learner code path.
double expectile_of(const std::vector<double>& qs, double tau) {
  double lo = *std::min_element(qs.begin(), qs.end()) - 1.0;
  double hi = *std::max_element(qs.begin(), qs.end()) + 1.0;
  auto objective = [&](double v) {
    double total = 0.0;
    for (double q : qs) {
      const double x = q - v;
      total += std::abs(tau - (x < 0.0 ? 1.0 : 0.0)) * x * x;
    }
    return total;
  };
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (objective(m1) < objective(m2))
      hi = m2;
    else
      lo = m1;
  }
  return 0.5 * (lo + hi);
}

void set_linear_net(MlpNet& net, const std::vector<double>& w, double b) {
  REQUIRE(net.layer_count() == 1);
  auto views = net.params();
  REQUIRE(views[0].size() == static_cast<int>(w.size()));
  for (std::size_t j = 0; j < w.size(); ++j) views[0].data[j] = w[j];
  views[1].data[0] = b;
}

Batch full_batch(const std::vector<Transition>& ts) {
  const int n = static_cast<int>(ts.size());
  const int sd = static_cast<int>(ts[0].state.size());
  const int ad = static_cast<int>(ts[0].action.size());
  Batch b;
  b.states = Mat(n, sd);
  b.actions = Mat(n, ad);
  b.rewards = Vec(n);
  b.next_states = Mat(n, sd);
  b.terminals = Vec(n);
  for (int i = 0; i < n; ++i) {
    b.states.row(i) = ts[i].state.transpose();
    b.actions.row(i) = ts[i].action.transpose();
    b.rewards(i) = ts[i].reward;
    b.next_states.row(i) = ts[i].next_state.transpose();
    b.terminals(i) = ts[i].terminal ? 1.0 : 0.0;
  }
  return b;
}

Transition make_t(const Vec& s, const Vec& a, double r, const Vec& s2,
                  bool terminal) {
  return Transition{s, a, r, s2, terminal};
}

Vec v2(double x, double y) {
  Vec v(2);
  v << x, y;
  return v;
}

Vec v1(double x) {
  Vec v(1);
  v << x;
  return v;
}

TransitionBuffer random_buffer(int n, std::uint64_t seed) {
  TransitionBuffer buf(2, 2);
  Rng rng = make_rng(seed, "learner-buffer");
  std::uniform_real_distribution<double> us(-1.0, 1.0);
  std::uniform_real_distribution<double> ur(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    Transition t;
    t.state = v2(us(rng), us(rng));
    t.action = v2(us(rng), us(rng));
    t.reward = ur(rng) < 0.1 ? 1.0 : 0.0;
    t.next_state = v2(us(rng), us(rng));
    t.terminal = t.reward == 1.0;
    buf.append(t);
  }
  buf.end_trajectory();
  return buf;
}

}  // namespace

TEST_CASE("expectile loss: pinned values and symmetry") {
  CHECK(expectile_loss(1.0, 0.9) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(expectile_loss(-1.0, 0.9) == doctest::Approx(0.1).epsilon(1e-15));
  for (double x : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
    CHECK(expectile_loss(x, 0.5) ==
          doctest::Approx(0.5 * x * x).epsilon(1e-15));
    for (double tau : {0.1, 0.5, 0.7, 0.9, 0.99}) {
      CHECK(expectile_loss(x, tau) >= 0.0);
      // complementary asymmetries split x^2 exactly
      CHECK(expectile_loss(x, tau) + expectile_loss(x, 1.0 - tau) ==
            doctest::Approx(x * x).epsilon(1e-12));
      // reflecting the argument swaps the asymmetry
      CHECK(expectile_loss(-x, 1.0 - tau) ==
            doctest::Approx(expectile_loss(x, tau)).epsilon(1e-12));
      CHECK(expectile_loss(x, tau) + expectile_loss(-x, tau) ==
            doctest::Approx(x * x).epsilon(1e-12));
    }
  }
}

TEST_CASE("value step: converges to the action expectile of fixed targets") {
  // Linear critics pin Q(s, a) = s1 + 2 a1; two states, three actions.
  // The value net must then land on the per-state expectile of
  // {s1 - 2, s1, s1 + 2}, checked against ternary search.
  for (double tau : {0.999, 0.5}) {
    CAPTURE(tau);
    Rng rng = make_rng(101, "value-step");
    IqlConfig cfg;
    cfg.expectile = tau;
    cfg.value_lr = 3e-3;
    NetWidths widths;
    widths.policy = {16};
    widths.q = {};
    widths.value = {32, 32};
    LearnerState st = LearnerState::make_iql(2, 2, widths, cfg, rng);
    set_linear_net(st.q1_target, {0.0, 1.0, 0.0, 2.0}, 0.0);
    set_linear_net(st.q2_target, {0.0, 1.0, 0.0, 2.0}, 0.0);

    std::vector<Transition> ts;
    for (double s1 : {0.0, 1.0})
      for (double a1 : {-1.0, 0.0, 1.0})
        ts.push_back(make_t(v2(0.0, s1), v2(0.0, a1), 0.0, v2(0.0, s1),
                            false));
    const Batch batch = full_batch(ts);

    for (int step = 0; step < 4000; ++step) iql_value_step(st, batch);

    for (double s1 : {0.0, 1.0}) {
      const std::vector<double> qs = {s1 - 2.0, s1, s1 + 2.0};
      const double oracle = expectile_of(qs, tau);
      const double v = st.value.forward_const(v2(0.0, s1).transpose())(0, 0);
      CAPTURE(s1);
      CHECK(std::abs(v - oracle) < 1e-2);
      if (tau == 0.999) {
        const double maxq = s1 + 2.0;
        CHECK(std::abs(v - maxq) < 2e-2);
      }
      if (tau == 0.5) {
        const double meanq = s1;
        CHECK(std::abs(v - meanq) < 1e-2);
      }
    }
  }
}

TEST_CASE("value step: constant targets pull V to the constant") {
  for (double tau : {0.3, 0.5, 0.9}) {
    CAPTURE(tau);
    Rng rng = make_rng(102, "value-const");
    IqlConfig cfg;
    cfg.expectile = tau;
    cfg.value_lr = 3e-3;
    NetWidths widths;
    widths.policy = {16};
    widths.q = {};
    widths.value = {32, 32};
    LearnerState st = LearnerState::make_iql(2, 2, widths, cfg, rng);
    set_linear_net(st.q1_target, {0.0, 0.0, 0.0, 0.0}, 0.7);
    set_linear_net(st.q2_target, {0.0, 0.0, 0.0, 0.0}, 0.7);

    std::vector<Transition> ts;
    Rng data_rng = make_rng(103, "value-const-data");
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 8; ++i)
      ts.push_back(make_t(v2(u(data_rng), u(data_rng)),
                          v2(u(data_rng), u(data_rng)), 0.0, v2(0.0, 0.0),
                          false));
    const Batch batch = full_batch(ts);
    for (int step = 0; step < 3000; ++step) iql_value_step(st, batch);
    for (const auto& t : ts) {
      const double v = st.value.forward_const(t.state.transpose())(0, 0);
      CHECK(std::abs(v - 0.7) < 1e-2);
    }
  }
}

TEST_CASE("q step: regresses to per-pair reward means with V pinned at 0") {
  Rng rng = make_rng(104, "q-step");
  IqlConfig cfg;
  cfg.q_lr = 3e-3;
  NetWidths widths;
  widths.policy = {16};
  widths.q = {32, 32};
  widths.value = {16};
  LearnerState st = LearnerState::make_iql(2, 2, widths, cfg, rng);
  st.value.fill_zero();

  // one state-action pair observed with rewards {0, 0, 1}
  std::vector<Transition> ts;
  const Vec s = v2(0.2, 0.2);
  const Vec a = v2(0.5, -0.5);
  for (double r : {0.0, 0.0, 1.0})
    ts.push_back(make_t(s, a, r, v2(0.3, 0.3), false));
  const Batch batch = full_batch(ts);

  QStepStats last;
  for (int step = 0; step < 4000; ++step) last = iql_q_step(st, batch);

  Mat sa(1, 4);
  sa << s.transpose(), a.transpose();
  const double q1 = st.q1.forward_const(sa)(0, 0);
  const double q2 = st.q2.forward_const(sa)(0, 0);
  CHECK(std::abs(q1 - 1.0 / 3.0) < 1e-2);
  CHECK(std::abs(q2 - 1.0 / 3.0) < 1e-2);
  CHECK(last.mean_q == doctest::Approx(1.0 / 3.0).epsilon(0.05));
  // V pinned at zero means the bootstrap contributed nothing
  CHECK(last.loss == doctest::Approx(2.0 / 9.0).epsilon(0.05));
}

TEST_CASE("q step: terminal bootstrap and the myopic limit") {
  // terminal transition with reward 1: the target is exactly 1 no matter
  // what V says, so Q converges to 1
  Rng rng = make_rng(105, "q-terminal");
  IqlConfig cfg;
  cfg.q_lr = 3e-3;
  NetWidths widths;
  widths.policy = {16};
  widths.q = {32, 32};
  widths.value = {16};
  LearnerState st = LearnerState::make_iql(2, 2, widths, cfg, rng);
  // value net deliberately large so a bootstrap leak would be visible
  std::vector<Transition> ts = {
      make_t(v2(0.1, 0.1), v2(0.2, 0.2), 1.0, v2(0.9, 0.9), true)};
  const Batch batch = full_batch(ts);
  for (int step = 0; step < 3000; ++step) iql_q_step(st, batch);
  Mat sa(1, 4);
  sa << 0.1, 0.1, 0.2, 0.2;
  CHECK(std::abs(st.q1.forward_const(sa)(0, 0) - 1.0) < 1e-2);

  // gamma = 0: targets equal rewards even without terminal flags
  Rng rng2 = make_rng(106, "q-myopic");
  IqlConfig cfg2;
  cfg2.gamma = 0.0;
  cfg2.q_lr = 3e-3;
  LearnerState st2 = LearnerState::make_iql(2, 2, widths, cfg2, rng2);
  std::vector<Transition> ts2 = {
      make_t(v2(0.1, 0.1), v2(0.2, 0.2), 0.25, v2(0.9, 0.9), false),
      make_t(v2(-0.4, 0.6), v2(-0.2, 0.1), 0.75, v2(0.2, -0.8), false)};
  const Batch batch2 = full_batch(ts2);
  for (int step = 0; step < 3000; ++step) iql_q_step(st2, batch2);
  Mat sa2(2, 4);
  sa2 << 0.1, 0.1, 0.2, 0.2, -0.4, 0.6, -0.2, 0.1;
  const Mat q = st2.q1.forward_const(sa2);
  CHECK(std::abs(q(0, 0) - 0.25) < 1e-2);
  CHECK(std::abs(q(1, 0) - 0.75) < 1e-2);
}

TEST_CASE("q step: targets track the online critics through the EMA") {
  Rng rng = make_rng(107, "q-ema");
  IqlConfig cfg;
  NetWidths widths;
  widths.policy = {16};
  widths.q = {16};
  widths.value = {16};
  LearnerState st = LearnerState::make_iql(2, 2, widths, cfg, rng);
  const std::uint64_t target_before = param_hash(
      static_cast<const LearnerState&>(st).q1_target.params("t."));
  std::vector<Transition> ts = {
      make_t(v2(0.1, 0.1), v2(0.2, 0.2), 1.0, v2(0.9, 0.9), true)};
  const Batch batch = full_batch(ts);
  iql_q_step(st, batch);
  const std::uint64_t target_after = param_hash(
      static_cast<const LearnerState&>(st).q1_target.params("t."));
  CHECK(target_after != target_before);
}

TEST_CASE("policy step: zero advantage reduces to behavior cloning") {
  Rng rng = make_rng(108, "awr-bc");
  IqlConfig cfg;
  NetWidths widths;
  widths.policy = {32, 32};
  widths.q = {16};
  widths.value = {16};
  LearnerState a = LearnerState::make_iql(2, 2, widths, cfg, rng);
  a.q1_target.fill_zero();
  a.q2_target.fill_zero();
  a.value.fill_zero();
  LearnerState b = a;

  std::vector<Transition> ts;
  Rng data_rng = make_rng(109, "awr-bc-data");
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int i = 0; i < 16; ++i)
    ts.push_back(make_t(v2(u(data_rng), u(data_rng)),
                        v2(u(data_rng), u(data_rng)), 0.0, v2(0.0, 0.0),
                        false));
  const Batch batch = full_batch(ts);

  const PolicyStepStats stats = iql_policy_step(a, batch);
  CHECK(stats.mean_weight == 1.0);

  // plain behavior cloning step with unit weights on the twin state
  b.policy.zero_grad();
  const double bc_loss = b.policy.weighted_nll_accumulate(
      batch.states, batch.actions, Vec::Ones(batch.size()));
  b.policy_opt.step(b.policy.params(), b.policy.grads());
  b.policy.clamp_log_std();

  CHECK(stats.loss == bc_loss);
  const LearnerState& ca = a;
  const LearnerState& cb = b;
  CHECK(param_hash(ca.policy.params("p.")) ==
        param_hash(cb.policy.params("p.")));
}

TEST_CASE("policy step: huge temperature approaches unit weights") {
  Rng rng = make_rng(110, "awr-limit");
  IqlConfig cfg;
  cfg.temperature = 1e12;
  NetWidths widths;
  widths.policy = {16};
  widths.q = {16};
  widths.value = {16};
  LearnerState st = LearnerState::make_iql(2, 2, widths, cfg, rng);
  TransitionBuffer buf = random_buffer(64, 111);
  Rng srng = make_rng(112, "awr-limit-sample");
  const Batch batch = sample_uniform(MergedView(buf), 64, srng);
  const PolicyStepStats stats = iql_policy_step(st, batch);
  CHECK(stats.mean_weight == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("policy step: advantage weighting shifts mass to the better action") {
  // One state, two 1-d actions with pinned advantages +1 and -1 at
  // temperature 1: weights e and 1/e, so the weighted pre-squash mean is
  // atanh(0.5) * tanh(1) and the squashed mean follows in closed form.
  Rng rng = make_rng(113, "awr-shift");
  IqlConfig cfg;
  cfg.temperature = 1.0;
  cfg.policy_lr = 3e-3;
  NetWidths widths;
  widths.policy = {32, 32};
  widths.q = {};
  widths.value = {16};
  LearnerState st = LearnerState::make_iql(1, 1, widths, cfg, rng);
  set_linear_net(st.q1_target, {0.0, 2.0}, 0.0);
  set_linear_net(st.q2_target, {0.0, 2.0}, 0.0);
  st.value.fill_zero();

  std::vector<Transition> ts = {
      make_t(v1(0.3), v1(0.5), 0.0, v1(0.3), false),
      make_t(v1(0.3), v1(-0.5), 0.0, v1(0.3), false)};
  const Batch batch = full_batch(ts);

  const double e = std::exp(1.0);
  PolicyStepStats stats;
  for (int step = 0; step < 3000; ++step) stats = iql_policy_step(st, batch);
  CHECK(stats.mean_weight ==
        doctest::Approx(0.5 * (e + 1.0 / e)).epsilon(1e-12));

  const double expected_mean =
      std::tanh(std::atanh(0.5) * std::tanh(1.0));
  const double got = st.policy.act_mean(v1(0.3))(0);
  CHECK(std::abs(got - expected_mean) < 0.03);
}

TEST_CASE("optimistic update with a zero bonus matches the pessimistic one") {
  TransitionBuffer buf = random_buffer(200, 114);
  const MergedView view(buf);
  SamplerConfig sampler;
  sampler.highrew_mix = 0.0;
  sampler.batch_size = 32;
  NetWidths widths;
  widths.policy = {16, 16};
  widths.q = {16, 16};
  widths.value = {16, 16};
  IqlConfig cfg;

  Rng init_a = make_rng(115, "bitwise");
  Rng init_b = make_rng(115, "bitwise");
  LearnerState a = LearnerState::make_iql(2, 2, widths, cfg, init_a);
  LearnerState b = LearnerState::make_iql(2, 2, widths, cfg, init_b);
  REQUIRE(a.hash() == b.hash());

  SUBCASE("explicit zero bonus") {
    ZeroBonus none;
    Rng rng_a = make_rng(116, "bitwise-steps");
    Rng rng_b = make_rng(116, "bitwise-steps");
    for (int round = 0; round < 20; ++round) {
      opt_update(a, view, none, sampler, rng_a);
      pessm_update(b, view, sampler, rng_b);
      REQUIRE(a.hash() == b.hash());
    }
  }

  SUBCASE("zero-coefficient prediction-error bonus") {
    Rng brng = make_rng(117, "bitwise-rnd");
    RndConfig rcfg;
    rcfg.hidden = {32};
    rcfg.embed_dim = 8;
    rcfg.coefficient = 0.0;
    RndBonus bonus(2, rcfg, brng);
    Rng rng_a = make_rng(118, "bitwise-steps2");
    Rng rng_b = make_rng(118, "bitwise-steps2");
    for (int round = 0; round < 20; ++round) {
      opt_update(a, view, bonus, sampler, rng_a);
      pessm_update(b, view, sampler, rng_b);
      REQUIRE(a.hash() == b.hash());
    }
  }
}

TEST_CASE("optimistic update: intrinsic bookkeeping splits the reward") {
  TransitionBuffer buf = random_buffer(100, 119);
  const MergedView view(buf);
  SamplerConfig sampler;
  sampler.highrew_mix = 0.0;
  sampler.batch_size = 16;
  NetWidths widths;
  widths.policy = {16};
  widths.q = {16};
  widths.value = {16};
  Rng init = make_rng(120, "bookkeeping");
  LearnerState st =
      LearnerState::make_iql(2, 2, widths, IqlConfig{}, init);

  // fresh count table: every unvisited state contributes exactly c
  CountBonus bonus(CountBonusConfig{5.0, 0.05});
  Rng rng = make_rng(121, "bookkeeping-steps");
  const TrainDiagnostics diag = opt_update(st, view, bonus, sampler, rng);
  CHECK(diag.mean_intrinsic_reward == 5.0);
  CHECK(diag.mean_extrinsic_reward >= 0.0);
  CHECK(diag.mean_extrinsic_reward <= 1.0);
  // shaped mean used for training exceeds the extrinsic-only mean
  CHECK(diag.mean_extrinsic_reward + diag.mean_intrinsic_reward >
        diag.mean_extrinsic_reward);
}

TEST_CASE("pessimistic update: same seed gives identical parameters") {
  TransitionBuffer buf = random_buffer(150, 122);
  const MergedView view(buf);
  SamplerConfig sampler;
  sampler.highrew_mix = 0.5;
  sampler.batch_size = 32;
  NetWidths widths;
  widths.policy = {16};
  widths.q = {16};
  widths.value = {16};

  auto run = [&]() {
    Rng init = make_rng(123, "pessm-det");
    LearnerState st =
        LearnerState::make_iql(2, 2, widths, IqlConfig{}, init);
    Rng rng = make_rng(124, "pessm-det-steps");
    for (int round = 0; round < 25; ++round)
      pessm_update(st, view, sampler, rng);
    return st.hash();
  };
  CHECK(run() == run());
}

TEST_CASE("twin critics: swapping them just relabels the learner") {
  TransitionBuffer buf = random_buffer(150, 125);
  const MergedView view(buf);
  SamplerConfig sampler;
  sampler.highrew_mix = 0.0;
  sampler.batch_size = 32;
  NetWidths widths;
  widths.policy = {16};
  widths.q = {16, 16};
  widths.value = {16};

  Rng init_a = make_rng(126, "twin-swap");
  Rng init_b = make_rng(126, "twin-swap");
  LearnerState a =
      LearnerState::make_iql(2, 2, widths, IqlConfig{}, init_a);
  LearnerState b =
      LearnerState::make_iql(2, 2, widths, IqlConfig{}, init_b);
  std::swap(b.q1, b.q2);
  std::swap(b.q1_target, b.q2_target);

  Rng rng_a = make_rng(127, "twin-swap-steps");
  Rng rng_b = make_rng(127, "twin-swap-steps");
  for (int round = 0; round < 15; ++round) {
    pessm_update(a, view, sampler, rng_a);
    pessm_update(b, view, sampler, rng_b);
  }
  const LearnerState& ca = a;
  const LearnerState& cb = b;
  CHECK(param_hash(ca.q1.params("q.")) == param_hash(cb.q2.params("q.")));
  CHECK(param_hash(ca.q2.params("q.")) == param_hash(cb.q1.params("q.")));
  CHECK(param_hash(ca.policy.params("p.")) ==
        param_hash(cb.policy.params("p.")));
  CHECK(param_hash(ca.value.params("v.")) ==
        param_hash(cb.value.params("v.")));
}

TEST_CASE("td3: myopic critics regress to rewards and stay bounded") {
  TransitionBuffer buf = random_buffer(100, 128);
  const MergedView view(buf);
  SamplerConfig sampler;
  sampler.highrew_mix = 0.0;
  sampler.batch_size = 32;
  NetWidths widths;
  widths.policy = {16, 16};
  widths.q = {32, 32};
  widths.value = {16};
  Td3Config cfg;
  cfg.gamma = 0.0;
  cfg.q_lr = 1e-3;
  Rng init = make_rng(129, "td3-myopic");
  LearnerState st = LearnerState::make_td3(2, 2, widths, cfg, init);
  Rng rng = make_rng(130, "td3-myopic-steps");
  TrainDiagnostics diag;
  for (int round = 0; round < 3000; ++round)
    diag = td3_update(st, view, sampler, rng);
  CHECK(diag.q_loss < 0.2);
  CHECK(diag.mean_batch_q > -0.2);
  CHECK(diag.mean_batch_q < 1.2);
}

TEST_CASE("td3: actor moves only on the delayed schedule") {
  TransitionBuffer buf = random_buffer(100, 131);
  const MergedView view(buf);
  SamplerConfig sampler;
  sampler.highrew_mix = 0.0;
  sampler.batch_size = 16;
  NetWidths widths;
  widths.policy = {16};
  widths.q = {16};
  widths.value = {16};
  Td3Config cfg;
  cfg.policy_delay = 3;
  Rng init = make_rng(132, "td3-delay");
  LearnerState st = LearnerState::make_td3(2, 2, widths, cfg, init);
  Rng rng = make_rng(133, "td3-delay-steps");

  const LearnerState& cst = st;
  for (int round = 1; round <= 9; ++round) {
    const std::uint64_t policy_before = param_hash(cst.policy.params("p."));
    const std::uint64_t target_before =
        param_hash(cst.q1_target.params("t."));
    td3_update(st, view, sampler, rng);
    const bool actor_round = round % 3 == 0;
    CHECK((param_hash(cst.policy.params("p.")) != policy_before) ==
          actor_round);
    CHECK((param_hash(cst.q1_target.params("t.")) != target_before) ==
          actor_round);
  }
}

TEST_CASE("act: deterministic is repeatable, stochastic stays in bounds") {
  NetWidths widths;
  widths.policy = {16, 16};
  widths.q = {16};
  widths.value = {16};
  Rng init = make_rng(134, "act");
  LearnerState iql_st =
      LearnerState::make_iql(2, 2, widths, IqlConfig{}, init);
  Rng init2 = make_rng(135, "act-td3");
  LearnerState td3_st =
      LearnerState::make_td3(2, 2, widths, Td3Config{}, init2);

  Rng rng = make_rng(136, "act-steps");
  const Vec s = v2(0.3, -0.4);
  const Vec d1 = iql_st.act(s, ActMode::kDeterministic, rng);
  const Vec d2 = iql_st.act(s, ActMode::kDeterministic, rng);
  CHECK(d1 == d2);

  for (const LearnerState* st : {&iql_st, &td3_st}) {
    for (int i = 0; i < 10000; ++i) {
      const Vec a = st->act(s, ActMode::kStochastic, rng);
      REQUIRE(a.size() == 2);
      REQUIRE(a.minCoeff() >= -1.0);
      REQUIRE(a.maxCoeff() <= 1.0);
    }
  }
}

TEST_CASE("act: clamped-down noise collapses to the deterministic action") {
  NetWidths widths;
  widths.policy = {16, 16};
  widths.q = {16};
  widths.value = {16};
  Rng init = make_rng(137, "act-quiet");
  LearnerState st = LearnerState::make_iql(2, 2, widths, IqlConfig{}, init);
  st.policy.mutable_log_std().setConstant(GaussianPolicy::kLogStdMin);
  Rng rng = make_rng(138, "act-quiet-steps");
  const Vec s = v2(-0.2, 0.6);
  const Vec det = st.act(s, ActMode::kDeterministic, rng);
  for (int i = 0; i < 100; ++i) {
    const Vec a = st.act(s, ActMode::kStochastic, rng);
    CHECK((a - det).cwiseAbs().maxCoeff() < 0.1);
  }
}

TEST_CASE("learner state: checkpoint write, read, rewrite is stable") {
  NetWidths widths;
  widths.policy = {8, 8};
  widths.q = {8};
  widths.value = {8};
  Rng init = make_rng(139, "ckpt");
  LearnerState st = LearnerState::make_iql(2, 2, widths, IqlConfig{}, init);
  const std::string p1 = "learner_ckpt_a.bin";
  const std::string p2 = "learner_ckpt_b.bin";
  st.save(p1);

  Rng init2 = make_rng(140, "ckpt-other");
  LearnerState other =
      LearnerState::make_iql(2, 2, widths, IqlConfig{}, init2);
  CHECK(other.hash() != st.hash());
  other.load(p1);
  other.save(p2);

  auto slurp = [](const std::string& path) {
    FILE* f = std::fopen(path.c_str(), "rb");
    REQUIRE(f != nullptr);
    std::string bytes;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0)
      bytes.append(buf, got);
    std::fclose(f);
    return bytes;
  };
  CHECK(slurp(p1) == slurp(p2));
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}
