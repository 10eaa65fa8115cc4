#include "ooo/env/surgery.hpp"

namespace ooo {

TransitionBuffer remove_near(const TransitionBuffer& buffer,
                             const std::vector<Vec>& centers,
                             const std::vector<double>& radii) {
  require(centers.size() == radii.size(),
          "remove_near: centers/radii length mismatch");
  for (double r : radii) require(r >= 0.0, "remove_near: negative radius");

  TransitionBuffer out(buffer.state_dim(), buffer.action_dim());
  for (const auto& [begin, end] : buffer.trajectories()) {
    bool kept_any = false;
    for (int i = begin; i < end; ++i) {
      const Transition& t = buffer[i];
      bool inside = false;
      for (std::size_t c = 0; c < centers.size() && !inside; ++c)
        inside = (t.state - centers[c]).norm() < radii[c];
      if (!inside) {
        out.append(t);
        kept_any = true;
      }
    }
    if (kept_any) out.end_trajectory();
  }
  return out;
}

TransitionBuffer truncate_trajectories(const TransitionBuffer& buffer,
                                       int max_len) {
  require(max_len >= 0, "truncate_trajectories: negative length");
  TransitionBuffer out(buffer.state_dim(), buffer.action_dim());
  for (const auto& [begin, end] : buffer.trajectories()) {
    const int stop = std::min(end, begin + max_len);
    for (int i = begin; i < stop; ++i) out.append(buffer[i]);
    if (stop > begin) out.end_trajectory();
  }
  return out;
}

}  // namespace ooo
