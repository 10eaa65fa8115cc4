#pragma once

#include <map>
#include <string>
#include <vector>

#include "ooo/bonus/bonus.hpp"

namespace ooo {

struct CountBonusConfig {
  double coefficient = 5.0;
  double bin_width = 0.05;
  // action dims bin upward from the normalized bound -1; the default
  // width 2 spans the whole [-1, 1] range, folding each action dim
  // into a single bin so counts reduce to per-state-cell visits.
  // Smaller widths split push directions into their own bins.
  double action_bin_width = 2.0;
};

// c / sqrt(n(s, a) + 1) over a uniform grid that discretizes the
// concatenated state-action vector; revisiting a state with a fresh
// action direction still counts as novel.
class CountBonus : public Bonus {
 public:
  explicit CountBonus(CountBonusConfig cfg = {}) : cfg_(cfg) {}

  double term(const Vec& state, const Vec& action) const override;
  void observe(const Vec& state, const Vec& action) override;

  long long count(const Vec& state, const Vec& action) const;
  std::size_t table_size() const { return table_.size(); }
  const CountBonusConfig& config() const { return cfg_; }

  // text lines "<bin indices...> <count>"
  void save_counts(const std::string& path) const;
  void load_counts(const std::string& path);

 private:
  std::vector<long long> bin_key(const Vec& state, const Vec& action) const;

  CountBonusConfig cfg_;
  std::map<std::vector<long long>, long long> table_;
};

}  // namespace ooo
