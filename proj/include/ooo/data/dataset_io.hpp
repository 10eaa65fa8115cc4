#pragma once

#include <string>

#include "ooo/data/buffer.hpp"

namespace ooo {

// Line-delimited text: header "state_dim=<d> action_dim=<k>", then one
// transition per line "s... | a... | r | s'... | t", with "---" lines
// closing trajectories. Floats print with 17 significant digits so a
// save/load cycle reproduces the buffer bit-exactly.
void save_dataset(const TransitionBuffer& buffer, const std::string& path);
TransitionBuffer load_dataset(const std::string& path);

}  // namespace ooo
