#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ooo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::string_view s,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
  return fnv1a64(s.data(), s.size(), h);
}

// Independent RNG streams derived from one base seed. Phases of a run
// (environment, learner, per-checkpoint retrains, evaluations) each get
// their own stream so that adding or removing one phase cannot perturb
// the draws seen by another.
inline std::uint64_t substream_seed(std::uint64_t base, std::string_view tag,
                                    std::uint64_t index = 0) {
  return splitmix64(base ^ splitmix64(fnv1a64(tag) + index));
}

inline Rng make_rng(std::uint64_t base, std::string_view tag,
                    std::uint64_t index = 0) {
  return Rng(substream_seed(base, tag, index));
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

}  // namespace ooo
