#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ooo/cli/run_config.hpp"

namespace ooo {

// One long-format metrics record. Exploitation evaluations always carry
// phase "retrain"; explorer evaluations carry the phase they were taken
// in ("pretrain" at step 0, "online" afterwards).
struct MetricsRow {
  std::string run_id;
  std::string phase;
  int step = 0;
  std::string metric;
  double value = 0.0;
};

std::vector<MetricsRow> rows_for_point(const std::string& run_id,
                                       const EvalPoint& point);

// Writer asserts every value is finite before it goes out.
void append_metrics_rows(std::ostream& out, const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> read_metrics_csv(const std::string& path);

// "x_bin,y_bin,count" rows for 2-D states (one bin column per dimension
// in general), sorted by bin index.
void write_visitation_csv(const std::string& path, const StateHistogram& h);

// "step,value" rows, step counting online environment steps from 1.
void write_intrinsic_csv(const std::string& path,
                         const std::vector<double>& per_step);

// Executes one experiment. Creates <out_root>/<config-hash>-seed<n>/
// holding config.txt (resolved), metrics.csv (streamed at evaluation
// cadence), visitation.csv, intrinsic.csv, and checkpoints. Prints the
// run directory on success; failures return non-zero after a
// stage-labeled message on err.
int cmd_run(const std::string& config_path, std::uint64_t seed,
            const std::string& out_root, std::ostream& out, std::ostream& err);

// Writes a generated offline dataset. point_mass rolls noisy scripted
// over-the-wall routes; grid_maze mixes n_traj random walks with
// expert_traj noisy scripted successes.
int cmd_make_dataset(const std::string& env_name, int n_traj,
                     const std::string& out_path, double noise_std,
                     int expert_traj, std::uint64_t seed, std::ostream& out,
                     std::ostream& err);

// Applies ball removal and/or trajectory truncation (max_len <= 0 keeps
// full length) and prints "removed_transitions <n>".
int cmd_ablate_dataset(const std::string& in_path, const std::string& out_path,
                       const std::vector<Vec>& centers,
                       const std::vector<double>& radii, int max_len,
                       std::ostream& out, std::ostream& err);

// Groups run directories by configuration hash, prints final-metric
// mean +/- standard error per group, and writes a long-format aggregate
// csv (config,metric,step,n,mean,stderr) over every recorded metric.
// Incomplete directories are listed on err and skipped.
int cmd_report(const std::vector<std::string>& run_dirs,
               const std::string& aggregate_csv_path, std::ostream& out,
               std::ostream& err);

}  // namespace ooo
