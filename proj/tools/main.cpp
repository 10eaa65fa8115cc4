#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ooo/cli/commands.hpp"

namespace {

// "x,y" (any dimension) into a vector
ooo::Vec parse_center(const std::string& s) {
  std::vector<double> xs;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) xs.push_back(std::stod(item));
  ooo::Vec v(static_cast<int>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    v(static_cast<int>(i)) = xs[i];
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"offline-to-online-to-offline reinforcement learning runner"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute one experiment run");
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_root = "runs";
  run->add_option("--config", config_path, "run configuration file")
      ->required();
  run->add_option("--seed", seed, "base seed for the run");
  run->add_option("--out", out_root, "directory to place the run under");

  auto* mk = app.add_subcommand("make-dataset", "generate an offline dataset");
  std::string mk_env = "point_mass";
  int mk_n = 100;
  std::string mk_out;
  double mk_noise = 0.1;
  int mk_expert = 2;
  std::uint64_t mk_seed = 0;
  mk->add_option("--env", mk_env, "point_mass or grid_maze");
  mk->add_option("--n", mk_n, "trajectory count (random walks for the maze)")
      ->required();
  mk->add_option("--out", mk_out, "output dataset path")->required();
  mk->add_option("--noise", mk_noise, "action noise std");
  mk->add_option("--expert", mk_expert, "scripted successes (maze only)");
  mk->add_option("--seed", mk_seed, "generation seed");

  auto* ab = app.add_subcommand("ablate-dataset",
                                "remove state regions or truncate episodes");
  std::string ab_in, ab_out;
  std::vector<std::string> ab_centers;
  std::vector<double> ab_radii;
  int ab_max_len = 0;
  ab->add_option("--in", ab_in, "input dataset")->required();
  ab->add_option("--out", ab_out, "output dataset")->required();
  ab->add_option("--center", ab_centers,
                 "ball center as comma-separated coordinates, repeatable");
  ab->add_option("--radius", ab_radii, "ball radius, one per center");
  ab->add_option("--max-len", ab_max_len,
                 "truncate trajectories to this many steps (0 keeps all)");

  auto* rep = app.add_subcommand("report", "aggregate finished run dirs");
  std::vector<std::string> rep_dirs;
  std::string rep_out = "report.csv";
  rep->add_option("--out", rep_out, "aggregate csv path");
  rep->add_option("dirs", rep_dirs, "run directories")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return ooo::cmd_run(config_path, seed, out_root, std::cout, std::cerr);
  }
  if (mk->parsed()) {
    return ooo::cmd_make_dataset(mk_env, mk_n, mk_out, mk_noise, mk_expert,
                                 mk_seed, std::cout, std::cerr);
  }
  if (ab->parsed()) {
    std::vector<ooo::Vec> centers;
    for (const std::string& c : ab_centers) {
      try {
        centers.push_back(parse_center(c));
      } catch (const std::exception&) {
        std::cerr << "error[ablate-dataset]: bad --center: " << c << '\n';
        return 1;
      }
    }
    return ooo::cmd_ablate_dataset(ab_in, ab_out, centers, ab_radii,
                                   ab_max_len, std::cout, std::cerr);
  }
  return ooo::cmd_report(rep_dirs, rep_out, std::cout, std::cerr);
}
