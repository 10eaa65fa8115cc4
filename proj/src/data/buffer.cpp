#include "ooo/data/buffer.hpp"

namespace ooo {

void TransitionBuffer::append(const Transition& t) {
  require(t.state.size() == state_dim_ && t.next_state.size() == state_dim_,
          "TransitionBuffer::append: state dim mismatch");
  require(t.action.size() == action_dim_,
          "TransitionBuffer::append: action dim mismatch");
  require(t.state.allFinite() && t.action.allFinite() &&
              t.next_state.allFinite() && std::isfinite(t.reward),
          "TransitionBuffer::append: non-finite entry");
  if (t.reward == 1.0) highrew_.push_back(size());
  items_.push_back(t);
}

void TransitionBuffer::end_trajectory() {
  const int here = size();
  if (here == 0) return;
  if (!ends_.empty() && ends_.back() == here) return;
  ends_.push_back(here);
}

std::vector<std::pair<int, int>> TransitionBuffer::trajectories() const {
  std::vector<std::pair<int, int>> out;
  int begin = 0;
  for (int end : ends_) {
    out.emplace_back(begin, end);
    begin = end;
  }
  if (begin < size()) out.emplace_back(begin, size());
  return out;
}

MergedView::MergedView(const TransitionBuffer& only) : off_(&only) {
  static const TransitionBuffer empty;
  on_ = &empty;
}

MergedView::MergedView(const TransitionBuffer& off, const TransitionBuffer& on)
    : off_(&off), on_(&on) {
  require(on.empty() || off.empty() ||
              (off.state_dim() == on.state_dim() &&
               off.action_dim() == on.action_dim()),
          "MergedView: buffer specs differ");
}

int MergedView::state_dim() const {
  return off_->empty() ? on_->state_dim() : off_->state_dim();
}

int MergedView::action_dim() const {
  return off_->empty() ? on_->action_dim() : off_->action_dim();
}

const Transition& MergedView::at(int i) const {
  return i < off_->size() ? (*off_)[i] : (*on_)[i - off_->size()];
}

const Transition& MergedView::highrew_at(int j) const {
  const int n_off = static_cast<int>(off_->highrew_index().size());
  if (j < n_off) return (*off_)[off_->highrew_index()[j]];
  return (*on_)[on_->highrew_index()[j - n_off]];
}

namespace {

Batch gather(const MergedView& view, const std::vector<int>& idx,
             const std::vector<bool>& from_highrew) {
  const int n = static_cast<int>(idx.size());
  const int sd = n > 0 ? view.state_dim() : 0;
  const int ad = n > 0 ? view.action_dim() : 0;
  Batch b;
  b.states.resize(n, sd);
  b.actions.resize(n, ad);
  b.rewards.resize(n);
  b.next_states.resize(n, sd);
  b.terminals.resize(n);
  for (int i = 0; i < n; ++i) {
    const Transition& t =
        from_highrew[i] ? view.highrew_at(idx[i]) : view.at(idx[i]);
    b.states.row(i) = t.state.transpose();
    b.actions.row(i) = t.action.transpose();
    b.rewards(i) = t.reward;
    b.next_states.row(i) = t.next_state.transpose();
    b.terminals(i) = t.terminal ? 1.0 : 0.0;
  }
  return b;
}

}  // namespace

Batch sample_uniform(const MergedView& view, int batch_size, Rng& rng) {
  require(batch_size >= 0, "sample_uniform: negative batch size");
  require(view.size() > 0 || batch_size == 0, "sample_uniform: empty buffer");
  std::vector<int> idx(static_cast<std::size_t>(batch_size));
  std::vector<bool> hi(static_cast<std::size_t>(batch_size), false);
  if (batch_size > 0) {
    std::uniform_int_distribution<int> pick(0, view.size() - 1);
    for (auto& i : idx) i = pick(rng);
  }
  return gather(view, idx, hi);
}

Batch sample_uniform(const TransitionBuffer& buffer, int batch_size,
                     Rng& rng) {
  return sample_uniform(MergedView(buffer), batch_size, rng);
}

Batch sample_reweighted(const MergedView& view, const SamplerConfig& cfg,
                        Rng& rng) {
  require(cfg.highrew_mix >= 0.0 && cfg.highrew_mix <= 1.0,
          "sample_reweighted: highrew_mix outside [0,1]");
  if (cfg.highrew_mix == 0.0)
    return sample_uniform(view, cfg.batch_size, rng);
  require(view.highrew_count() > 0,
          "sample_reweighted: no reward-1 transitions to upsample");
  require(cfg.batch_size >= 0, "sample_reweighted: negative batch size");
  require(view.size() > 0 || cfg.batch_size == 0,
          "sample_reweighted: empty buffer");

  const int n = cfg.batch_size;
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::vector<bool> hi(static_cast<std::size_t>(n), false);
  std::uniform_int_distribution<int> pick_all(0, view.size() - 1);
  std::uniform_int_distribution<int> pick_hi(0, view.highrew_count() - 1);
  std::bernoulli_distribution coin(cfg.highrew_mix);
  for (int i = 0; i < n; ++i) {
    if (cfg.highrew_mix == 1.0 || coin(rng)) {
      hi[static_cast<std::size_t>(i)] = true;
      idx[static_cast<std::size_t>(i)] = pick_hi(rng);
    } else {
      idx[static_cast<std::size_t>(i)] = pick_all(rng);
    }
  }
  return gather(view, idx, hi);
}

Batch sample_reweighted(const TransitionBuffer& buffer,
                        const SamplerConfig& cfg, Rng& rng) {
  return sample_reweighted(MergedView(buffer), cfg, rng);
}

}  // namespace ooo
