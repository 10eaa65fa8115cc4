#pragma once

#include <cstdint>
#include <string>

#include "ooo/orchestrator/experiment.hpp"

namespace ooo {

// Everything a run needs besides the seed: the experiment settings plus
// the offline dataset path (empty means start with no offline data).
struct RunConfig {
  std::string dataset;
  ExperimentConfig experiment;
};

// Flat "key = value" document, one line per field, '#' starts a comment.
// Every key has a default; unknown or repeated keys are rejected.
// serialize -> parse -> serialize is byte-identical (doubles print in
// their shortest round-trip form).
std::string serialize_config(const RunConfig& cfg);
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Stable across seeds: the seed field is zeroed before hashing, so one
// configuration groups its per-seed runs together.
std::uint64_t config_hash(const RunConfig& cfg);

// "<16 hex digits of config_hash>-seed<seed>"
std::string run_dir_name(const RunConfig& cfg, std::uint64_t seed);

// shortest decimal form that parses back to the same double
std::string format_double(double v);

}  // namespace ooo
