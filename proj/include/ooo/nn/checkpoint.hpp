#pragma once

#include <string>
#include <vector>

#include "ooo/nn/mlp.hpp"

namespace ooo {

// On-disk layout: one manifest line per tensor ("name rows cols offset",
// offset in bytes into the blob), a "---" separator, then all tensor
// payloads as little-endian 32-bit floats in column-major order.
void save_checkpoint(const std::string& path,
                     const std::vector<ConstParamView>& tensors);

struct LoadedTensor {
  std::string name;
  int rows = 0;
  int cols = 0;
  std::vector<double> data;  // column-major
};

std::vector<LoadedTensor> load_checkpoint(const std::string& path);

// Fills each view with the same-named tensor from the file. Every view
// must be found with matching shape.
void load_checkpoint_into(const std::string& path,
                          const std::vector<ParamView>& views);

// Order-sensitive FNV-1a hash over tensor names, shapes, and raw bytes.
std::uint64_t param_hash(const std::vector<ConstParamView>& tensors);

}  // namespace ooo
