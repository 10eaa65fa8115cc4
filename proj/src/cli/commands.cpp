#include "ooo/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "ooo/data/dataset_io.hpp"
#include "ooo/env/dataset_gen.hpp"
#include "ooo/env/surgery.hpp"

namespace fs = std::filesystem;

namespace ooo {

namespace {

constexpr const char* kMetricsHeader = "run_id,phase,step,metric,value";

void append_row(std::vector<MetricsRow>& rows, const std::string& run_id,
                const std::string& phase, int step, const std::string& metric,
                double value) {
  rows.push_back({run_id, phase, step, metric, value});
}

std::vector<std::string> split_csv_line(const std::string& line, int fields) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  require(static_cast<int>(out.size()) == fields,
          "bad csv line (expected " + std::to_string(fields) +
              " fields): " + line);
  return out;
}

struct Aggregate {
  int n = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
};

Aggregate aggregate_of(const std::vector<double>& xs) {
  Aggregate a;
  a.n = static_cast<int>(xs.size());
  if (a.n == 0) return a;
  double sum = 0.0;
  for (double x : xs) sum += x;
  a.mean = sum / a.n;
  if (a.n > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - a.mean) * (x - a.mean);
    a.stderr_ = std::sqrt(ss / (a.n - 1)) / std::sqrt(static_cast<double>(a.n));
  }
  return a;
}

}  // namespace

std::vector<MetricsRow> rows_for_point(const std::string& run_id,
                                       const EvalPoint& p) {
  std::vector<MetricsRow> rows;
  if (p.explore_eval.episodes > 0) {
    append_row(rows, run_id, p.phase, p.step, "explore_return",
               p.explore_eval.mean_return);
    append_row(rows, run_id, p.phase, p.step, "explore_success",
               p.explore_eval.success_rate);
    append_row(rows, run_id, p.phase, p.step, "explore_length",
               p.explore_eval.mean_length);
  }
  if (p.exploit_eval.episodes > 0) {
    append_row(rows, run_id, "retrain", p.step, "exploit_return",
               p.exploit_eval.mean_return);
    append_row(rows, run_id, "retrain", p.step, "exploit_success",
               p.exploit_eval.success_rate);
    append_row(rows, run_id, "retrain", p.step, "exploit_length",
               p.exploit_eval.mean_length);
  }
  if (p.phase != "retrain") {
    append_row(rows, run_id, p.phase, p.step, "mean_intrinsic",
               p.mean_intrinsic_window);
    append_row(rows, run_id, p.phase, p.step, "value_loss", p.diag.value_loss);
    append_row(rows, run_id, p.phase, p.step, "q_loss", p.diag.q_loss);
    append_row(rows, run_id, p.phase, p.step, "policy_loss",
               p.diag.policy_loss);
    append_row(rows, run_id, p.phase, p.step, "mean_batch_q",
               p.diag.mean_batch_q);
    append_row(rows, run_id, p.phase, p.step, "mean_awr_weight",
               p.diag.mean_awr_weight);
    append_row(rows, run_id, p.phase, p.step, "mean_extrinsic_reward",
               p.diag.mean_extrinsic_reward);
    append_row(rows, run_id, p.phase, p.step, "mean_intrinsic_reward",
               p.diag.mean_intrinsic_reward);
  }
  return rows;
}

void append_metrics_rows(std::ostream& out,
                         const std::vector<MetricsRow>& rows) {
  for (const MetricsRow& r : rows) {
    require(std::isfinite(r.value),
            "non-finite metric value: " + r.metric + " at step " +
                std::to_string(r.step));
    out << r.run_id << ',' << r.phase << ',' << r.step << ',' << r.metric
        << ',' << format_double(r.value) << '\n';
  }
}

std::vector<MetricsRow> read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open metrics file: " + path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)),
          "empty metrics file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == kMetricsHeader, "bad metrics header in " + path);

  std::vector<MetricsRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv_line(line, 5);
    MetricsRow r;
    r.run_id = f[0];
    r.phase = f[1];
    require(r.phase == "pretrain" || r.phase == "online" ||
                r.phase == "retrain",
            "bad phase in " + path + ": " + r.phase);
    r.step = std::stoi(f[2]);
    r.metric = f[3];
    const auto* end = f[4].data() + f[4].size();
    const auto res = std::from_chars(f[4].data(), end, r.value);
    require(res.ec == std::errc() && res.ptr == end,
            "bad value in " + path + ": " + f[4]);
    require(std::isfinite(r.value), "non-finite value in " + path);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_visitation_csv(const std::string& path, const StateHistogram& h) {
  std::ofstream out(path);
  require(out.good(), "cannot open for writing: " + path);
  std::size_t dims = 2;
  if (!h.bins().empty()) {
    dims = std::max<std::size_t>(h.bins().begin()->first.size(), 2);
  }
  for (std::size_t d = 0; d < dims; ++d) {
    if (d) out << ',';
    if (d == 0) {
      out << "x_bin";
    } else if (d == 1) {
      out << "y_bin";
    } else {
      out << 'b' << d;
    }
  }
  out << ",count\n";
  for (const auto& [key, n] : h.bins()) {
    for (std::size_t d = 0; d < key.size(); ++d) {
      if (d) out << ',';
      out << key[d];
    }
    // pad 1-D histograms into the two-column layout
    for (std::size_t d = key.size(); d < 2; ++d) out << ",0";
    out << ',' << n << '\n';
  }
  require(out.good(), "write failed: " + path);
}

void write_intrinsic_csv(const std::string& path,
                         const std::vector<double>& per_step) {
  std::ofstream out(path);
  require(out.good(), "cannot open for writing: " + path);
  out << "step,value\n";
  for (std::size_t i = 0; i < per_step.size(); ++i) {
    require(std::isfinite(per_step[i]), "non-finite intrinsic value");
    out << (i + 1) << ',' << format_double(per_step[i]) << '\n';
  }
  require(out.good(), "write failed: " + path);
}

int cmd_run(const std::string& config_path, std::uint64_t seed,
            const std::string& out_root, std::ostream& out,
            std::ostream& err) {
  std::string stage = "config";
  try {
    RunConfig rc = parse_config_file(config_path);
    rc.experiment.ooo.seed = seed;
    rc.experiment.validate();
    const std::string run_id = run_dir_name(rc, seed);
    const fs::path run_dir = fs::path(out_root) / run_id;

    stage = "dataset";
    TransitionBuffer d_off;
    if (rc.dataset.empty()) {
      const auto env = make_env(rc.experiment);
      d_off = TransitionBuffer(env->spec().state_dim, env->spec().action_dim);
    } else {
      d_off = load_dataset(rc.dataset);
    }

    stage = "run";
    fs::create_directories(run_dir);
    {
      std::ofstream cfg_out(run_dir / "config.txt");
      require(cfg_out.good(), "cannot write resolved config");
      cfg_out << serialize_config(rc);
      require(cfg_out.good(), "config write failed");
    }
    std::ofstream metrics(run_dir / "metrics.csv");
    require(metrics.good(), "cannot write metrics.csv");
    metrics << kMetricsHeader << '\n';
    const auto on_point = [&](const EvalPoint& p) {
      append_metrics_rows(metrics, rows_for_point(run_id, p));
      metrics.flush();
      require(metrics.good(), "metrics write failed");
    };
    const ExperimentResult result =
        run_experiment(rc.experiment, d_off, on_point);
    require(metrics.good(), "metrics write failed");
    metrics.close();

    stage = "write";
    write_visitation_csv((run_dir / "visitation.csv").string(),
                         result.record.visitation);
    write_intrinsic_csv((run_dir / "intrinsic.csv").string(),
                        result.record.intrinsic_per_step);
    result.explore.save((run_dir / "explore.ckpt").string());
    if (result.has_exploit) {
      result.exploit.save((run_dir / "exploit.ckpt").string());
    }
    out << run_dir.string() << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "error[" << stage << "]: " << e.what() << '\n';
    return 1;
  }
}

int cmd_make_dataset(const std::string& env_name, int n_traj,
                     const std::string& out_path, double noise_std,
                     int expert_traj, std::uint64_t seed, std::ostream& out,
                     std::ostream& err) {
  try {
    require(n_traj >= 0, "trajectory count must be >= 0");
    Rng rng = make_rng(seed, "dataset");
    TransitionBuffer buffer;
    if (env_name == "point_mass") {
      PointMassWallEnv env;
      buffer = generate_suboptimal_dataset(env, n_traj, noise_std, rng);
    } else if (env_name == "grid_maze") {
      GridMazeEnv env;
      buffer =
          generate_maze_mixture_dataset(env, n_traj, expert_traj, noise_std, rng);
    } else {
      throw std::runtime_error("unknown env for dataset generation: " +
                               env_name);
    }
    save_dataset(buffer, out_path);
    out << out_path << " transitions " << buffer.size() << " trajectories "
        << buffer.trajectories().size() << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "error[make-dataset]: " << e.what() << '\n';
    return 1;
  }
}

int cmd_ablate_dataset(const std::string& in_path, const std::string& out_path,
                       const std::vector<Vec>& centers,
                       const std::vector<double>& radii, int max_len,
                       std::ostream& out, std::ostream& err) {
  try {
    require(centers.size() == radii.size(),
            "need exactly one radius per center");
    const TransitionBuffer input = load_dataset(in_path);
    TransitionBuffer result = remove_near(input, centers, radii);
    if (max_len > 0) result = truncate_trajectories(result, max_len);
    save_dataset(result, out_path);
    out << "removed_transitions " << (input.size() - result.size()) << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "error[ablate-dataset]: " << e.what() << '\n';
    return 1;
  }
}

int cmd_report(const std::vector<std::string>& run_dirs,
               const std::string& aggregate_csv_path, std::ostream& out,
               std::ostream& err) {
  struct RunData {
    std::string dir;
    std::vector<MetricsRow> rows;
  };
  std::map<std::string, std::vector<RunData>> groups;
  for (const std::string& dir : run_dirs) {
    try {
      const RunConfig rc =
          parse_config_file((fs::path(dir) / "config.txt").string());
      std::vector<MetricsRow> rows =
          read_metrics_csv((fs::path(dir) / "metrics.csv").string());
      char hex[17];
      std::snprintf(hex, sizeof(hex), "%016llx",
                    static_cast<unsigned long long>(config_hash(rc)));
      groups[hex].push_back({dir, std::move(rows)});
    } catch (const std::exception& e) {
      err << "skipping " << dir << ": " << e.what() << '\n';
    }
  }
  if (groups.empty()) {
    err << "error[report]: no completed run directories\n";
    return 1;
  }

  std::ofstream agg(aggregate_csv_path);
  require(agg.good(), "cannot write aggregate csv: " + aggregate_csv_path);
  agg << "config,metric,step,n,mean,stderr\n";

  for (const auto& [config, runs] : groups) {
    // last value per (metric, step) within a run, then across runs
    std::map<std::pair<std::string, int>, std::vector<double>> samples;
    for (const RunData& run : runs) {
      std::map<std::pair<std::string, int>, double> last;
      for (const MetricsRow& r : run.rows) last[{r.metric, r.step}] = r.value;
      for (const auto& [key, v] : last) samples[key].push_back(v);
    }
    for (const auto& [key, xs] : samples) {
      const Aggregate a = aggregate_of(xs);
      agg << config << ',' << key.first << ',' << key.second << ',' << a.n
          << ',' << format_double(a.mean) << ',' << format_double(a.stderr_)
          << '\n';
    }

    out << "config " << config << " (" << runs.size() << " run"
        << (runs.size() == 1 ? "" : "s") << ")\n";
    for (const char* metric :
         {"explore_return", "explore_success", "exploit_return",
          "exploit_success", "mean_intrinsic"}) {
      // each run contributes the value at its own final step
      std::vector<double> finals;
      for (const RunData& run : runs) {
        int best_step = -1;
        double value = 0.0;
        for (const MetricsRow& r : run.rows) {
          if (r.metric == metric && r.step >= best_step) {
            best_step = r.step;
            value = r.value;
          }
        }
        if (best_step >= 0) finals.push_back(value);
      }
      if (finals.empty()) continue;
      const Aggregate a = aggregate_of(finals);
      char line[160];
      std::snprintf(line, sizeof(line),
                    "  final %-16s %10.4f +/- %.4f  (n=%d)\n", metric, a.mean,
                    a.stderr_, a.n);
      out << line;
    }
  }
  require(agg.good(), "aggregate csv write failed");
  return 0;
}

}  // namespace ooo
