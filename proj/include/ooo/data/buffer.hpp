#pragma once

#include <vector>

#include "ooo/data/transition.hpp"

namespace ooo {

struct Batch {
  Mat states;
  Mat actions;
  Vec rewards;
  Mat next_states;
  Vec terminals;  // 1.0 where the transition ends the episode for real
  int size() const { return static_cast<int>(states.rows()); }
};

struct SamplerConfig {
  double highrew_mix = 0.5;  // probability a draw comes from the reward-1 set
  int batch_size = 256;
};

// Append-only transition store with an index of reward-1 entries and
// trajectory boundary offsets.
class TransitionBuffer {
 public:
  TransitionBuffer() = default;
  TransitionBuffer(int state_dim, int action_dim)
      : state_dim_(state_dim), action_dim_(action_dim) {}

  int state_dim() const { return state_dim_; }
  int action_dim() const { return action_dim_; }
  int size() const { return static_cast<int>(items_.size()); }
  bool empty() const { return items_.empty(); }

  void append(const Transition& t);
  // Closes the current trajectory at the present size. No-ops when the
  // trajectory would be empty.
  void end_trajectory();

  const Transition& operator[](int i) const {
    return items_[static_cast<std::size_t>(i)];
  }

  const std::vector<int>& highrew_index() const { return highrew_; }
  // Exclusive end offsets of closed trajectories, strictly increasing.
  const std::vector<int>& boundaries() const { return ends_; }
  // [begin, end) ranges including a trailing open trajectory if any.
  std::vector<std::pair<int, int>> trajectories() const;

 private:
  int state_dim_ = 0;
  int action_dim_ = 0;
  std::vector<Transition> items_;
  std::vector<int> highrew_;
  std::vector<int> ends_;
};

// Logical concatenation of two buffers; transitions are not copied.
class MergedView {
 public:
  explicit MergedView(const TransitionBuffer& only);
  MergedView(const TransitionBuffer& off, const TransitionBuffer& on);

  int state_dim() const;
  int action_dim() const;
  int size() const { return off_->size() + on_->size(); }
  int highrew_count() const {
    return static_cast<int>(off_->highrew_index().size() +
                            on_->highrew_index().size());
  }

  const Transition& at(int i) const;
  const Transition& highrew_at(int j) const;

 private:
  const TransitionBuffer* off_;
  const TransitionBuffer* on_;
};

// Independent uniform draws with replacement.
Batch sample_uniform(const MergedView& view, int batch_size, Rng& rng);
Batch sample_uniform(const TransitionBuffer& buffer, int batch_size, Rng& rng);

// Each element comes from the reward-1 set with probability highrew_mix,
// otherwise uniformly from everything. highrew_mix > 0 demands at least
// one observed success.
Batch sample_reweighted(const MergedView& view, const SamplerConfig& cfg,
                        Rng& rng);
Batch sample_reweighted(const TransitionBuffer& buffer,
                        const SamplerConfig& cfg, Rng& rng);

}  // namespace ooo
