#include "ooo/bonus/count_bonus.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ooo {

Vec Bonus::terms(const Mat& states, const Mat& actions) const {
  Vec out(states.rows());
  for (int i = 0; i < states.rows(); ++i)
    out(i) = term(states.row(i).transpose(), actions.row(i).transpose());
  return out;
}

void Bonus::observe(const Vec&, const Vec&) {}
void Bonus::train(const Mat&) {}

std::vector<long long> CountBonus::bin_key(const Vec& state,
                                           const Vec& action) const {
  std::vector<long long> key;
  key.reserve(static_cast<std::size_t>(state.size() + action.size()));
  for (int d = 0; d < state.size(); ++d)
    key.push_back(static_cast<long long>(std::floor(state(d) / cfg_.bin_width)));
  // action dims bin from the normalized floor of the action box, so a
  // width that spans the whole [-1, 1] range folds the dim into one bin
  for (int d = 0; d < action.size(); ++d)
    key.push_back(static_cast<long long>(
        std::floor((action(d) + 1.0) / cfg_.action_bin_width)));
  return key;
}

long long CountBonus::count(const Vec& state, const Vec& action) const {
  const auto it = table_.find(bin_key(state, action));
  return it == table_.end() ? 0 : it->second;
}

double CountBonus::term(const Vec& state, const Vec& action) const {
  if (cfg_.coefficient == 0.0) return 0.0;
  return cfg_.coefficient /
         std::sqrt(static_cast<double>(count(state, action)) + 1.0);
}

void CountBonus::observe(const Vec& state, const Vec& action) {
  ++table_[bin_key(state, action)];
}

void CountBonus::save_counts(const std::string& path) const {
  std::ofstream out(path);
  require(out.good(), "CountBonus::save_counts: cannot open " + path);
  for (const auto& [key, n] : table_) {
    for (long long k : key) out << k << ' ';
    out << n << '\n';
  }
  require(out.good(), "CountBonus::save_counts: write failed for " + path);
}

void CountBonus::load_counts(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "CountBonus::load_counts: cannot open " + path);
  table_.clear();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::vector<long long> nums;
    long long v = 0;
    while (ls >> v) nums.push_back(v);
    require(!ls.fail() || ls.eof(),
            "CountBonus::load_counts: bad line: " + line);
    require(nums.size() >= 2, "CountBonus::load_counts: bad line: " + line);
    const long long n = nums.back();
    nums.pop_back();
    require(n >= 0, "CountBonus::load_counts: negative count");
    table_[nums] = n;
  }
}

}  // namespace ooo
