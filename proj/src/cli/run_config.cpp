#include "ooo/cli/run_config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

namespace ooo {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

long long parse_ll(const std::string& v, const std::string& key) {
  long long out = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  require(r.ec == std::errc() && r.ptr == end,
          "config key " + key + ": not an integer: '" + v + "'");
  return out;
}

double parse_dbl(const std::string& v, const std::string& key) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, out);
  require(r.ec == std::errc() && r.ptr == end,
          "config key " + key + ": not a number: '" + v + "'");
  return out;
}

bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::runtime_error("config key " + key + ": not a bool: '" + v + "'");
}

std::vector<int> parse_int_list(const std::string& v, const std::string& key) {
  std::vector<int> out;
  if (trim(v).empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(static_cast<int>(parse_ll(trim(item), key)));
  }
  return out;
}

std::string fmt_ll(long long v) { return std::to_string(v); }

std::string fmt_int_list(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

struct FieldBinding {
  std::string key;
  std::function<std::string(RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

std::vector<FieldBinding> make_bindings() {
  std::vector<FieldBinding> b;

  auto add_string = [&b](const char* key, auto ref) {
    b.push_back({key, [ref](RunConfig& c) { return ref(c); },
                 [ref](RunConfig& c, const std::string& v) { ref(c) = v; }});
  };
  auto add_int = [&b](const char* key, auto ref) {
    b.push_back({key, [ref](RunConfig& c) { return fmt_ll(ref(c)); },
                 [ref, key = std::string(key)](RunConfig& c,
                                               const std::string& v) {
                   ref(c) = static_cast<int>(parse_ll(v, key));
                 }});
  };
  auto add_u64 = [&b](const char* key, auto ref) {
    b.push_back(
        {key,
         [ref](RunConfig& c) { return std::to_string(ref(c)); },
         [ref, key = std::string(key)](RunConfig& c, const std::string& v) {
           ref(c) = static_cast<std::uint64_t>(parse_ll(v, key));
         }});
  };
  auto add_double = [&b](const char* key, auto ref) {
    b.push_back({key, [ref](RunConfig& c) { return format_double(ref(c)); },
                 [ref, key = std::string(key)](RunConfig& c,
                                               const std::string& v) {
                   ref(c) = parse_dbl(v, key);
                 }});
  };
  auto add_bool = [&b](const char* key, auto ref) {
    b.push_back({key,
                 [ref](RunConfig& c) {
                   return std::string(ref(c) ? "true" : "false");
                 },
                 [ref, key = std::string(key)](RunConfig& c,
                                               const std::string& v) {
                   ref(c) = parse_bool(v, key);
                 }});
  };
  auto add_int_list = [&b](const char* key, auto ref) {
    b.push_back({key, [ref](RunConfig& c) { return fmt_int_list(ref(c)); },
                 [ref, key = std::string(key)](RunConfig& c,
                                               const std::string& v) {
                   ref(c) = parse_int_list(v, key);
                 }});
  };
  auto add_enum = [&b](const char* key, auto ref, auto names) {
    b.push_back(
        {key,
         [ref, names](RunConfig& c) {
           for (const auto& [name, value] : names) {
             if (ref(c) == value) return std::string(name);
           }
           throw std::runtime_error("unserializable enum value");
         },
         [ref, names, key = std::string(key)](RunConfig& c,
                                              const std::string& v) {
           for (const auto& [name, value] : names) {
             if (v == name) {
               ref(c) = value;
               return;
             }
           }
           throw std::runtime_error("config key " + key +
                                    ": unknown choice: '" + v + "'");
         }});
  };

  add_string("dataset", [](RunConfig& c) -> auto& { return c.dataset; });
  add_string("env_name",
             [](RunConfig& c) -> auto& { return c.experiment.env_name; });
  add_u64("seed", [](RunConfig& c) -> auto& { return c.experiment.ooo.seed; });

  auto ooo = [](RunConfig& c) -> OooConfig& { return c.experiment.ooo; };
  add_int("pretrain_steps",
          [ooo](RunConfig& c) -> auto& { return ooo(c).pretrain_steps; });
  add_int("online_budget",
          [ooo](RunConfig& c) -> auto& { return ooo(c).online_budget; });
  add_int("retrain_steps",
          [ooo](RunConfig& c) -> auto& { return ooo(c).retrain_steps; });
  add_int_list("retrain_schedule", [ooo](RunConfig& c) -> auto& {
    return ooo(c).retrain_schedule;
  });
  add_bool("retrain_enabled",
           [ooo](RunConfig& c) -> auto& { return ooo(c).retrain_enabled; });
  add_int("eval_interval",
          [ooo](RunConfig& c) -> auto& { return ooo(c).eval_interval; });
  add_int("eval_episodes",
          [ooo](RunConfig& c) -> auto& { return ooo(c).eval_episodes; });
  add_int("intrinsic_window",
          [ooo](RunConfig& c) -> auto& { return ooo(c).intrinsic_window; });
  add_enum(
      "bonus_kind", [ooo](RunConfig& c) -> auto& { return ooo(c).bonus_kind; },
      std::vector<std::pair<std::string, BonusKind>>{
          {"none", BonusKind::kNone},
          {"count", BonusKind::kCount},
          {"rnd", BonusKind::kRnd}});
  add_double("bonus_coefficient",
             [ooo](RunConfig& c) -> auto& { return ooo(c).bonus_coefficient; });
  add_bool("pretrain_bonus_active", [ooo](RunConfig& c) -> auto& {
    return ooo(c).pretrain_bonus_active;
  });
  add_double("alpha_mix",
             [ooo](RunConfig& c) -> auto& { return ooo(c).alpha_mix; });
  add_int("batch_size",
          [ooo](RunConfig& c) -> auto& { return ooo(c).batch_size; });
  add_bool("frozen_rnd_retrain",
           [ooo](RunConfig& c) -> auto& { return ooo(c).frozen_rnd_retrain; });
  add_bool("warm_start_retrain",
           [ooo](RunConfig& c) -> auto& { return ooo(c).warm_start_retrain; });
  add_bool("sync_exploiter_back",
           [ooo](RunConfig& c) -> auto& { return ooo(c).sync_exploiter_back; });
  add_enum(
      "exploitation_learner",
      [ooo](RunConfig& c) -> auto& { return ooo(c).exploitation_learner; },
      std::vector<std::pair<std::string, ExploitKind>>{
          {"iql", ExploitKind::kIql}, {"td3", ExploitKind::kTd3}});
  add_double("count_bin_width", [](RunConfig& c) -> auto& {
    return c.experiment.count_bin_width;
  });
  add_double("count_action_bin_width", [](RunConfig& c) -> auto& {
    return c.experiment.count_action_bin_width;
  });

  auto iql = [](RunConfig& c) -> IqlConfig& { return c.experiment.iql; };
  add_double("iql.expectile",
             [iql](RunConfig& c) -> auto& { return iql(c).expectile; });
  add_double("iql.temperature",
             [iql](RunConfig& c) -> auto& { return iql(c).temperature; });
  add_double("iql.gamma",
             [iql](RunConfig& c) -> auto& { return iql(c).gamma; });
  add_double("iql.ema_rate",
             [iql](RunConfig& c) -> auto& { return iql(c).ema_rate; });
  add_double("iql.weight_clip",
             [iql](RunConfig& c) -> auto& { return iql(c).weight_clip; });
  add_double("iql.value_lr",
             [iql](RunConfig& c) -> auto& { return iql(c).value_lr; });
  add_double("iql.q_lr", [iql](RunConfig& c) -> auto& { return iql(c).q_lr; });
  add_double("iql.policy_lr",
             [iql](RunConfig& c) -> auto& { return iql(c).policy_lr; });

  auto td3 = [](RunConfig& c) -> Td3Config& { return c.experiment.td3; };
  add_int("td3.policy_delay",
          [td3](RunConfig& c) -> auto& { return td3(c).policy_delay; });
  add_double("td3.smoothing_noise_std", [td3](RunConfig& c) -> auto& {
    return td3(c).smoothing_noise_std;
  });
  add_double("td3.smoothing_noise_clip", [td3](RunConfig& c) -> auto& {
    return td3(c).smoothing_noise_clip;
  });
  add_double("td3.exploration_noise_std", [td3](RunConfig& c) -> auto& {
    return td3(c).exploration_noise_std;
  });
  add_double("td3.gamma",
             [td3](RunConfig& c) -> auto& { return td3(c).gamma; });
  add_double("td3.ema_rate",
             [td3](RunConfig& c) -> auto& { return td3(c).ema_rate; });
  add_double("td3.q_lr", [td3](RunConfig& c) -> auto& { return td3(c).q_lr; });
  add_double("td3.policy_lr",
             [td3](RunConfig& c) -> auto& { return td3(c).policy_lr; });

  auto widths = [](RunConfig& c) -> NetWidths& { return c.experiment.widths; };
  add_int_list("widths.policy",
               [widths](RunConfig& c) -> auto& { return widths(c).policy; });
  add_int_list("widths.q",
               [widths](RunConfig& c) -> auto& { return widths(c).q; });
  add_int_list("widths.value",
               [widths](RunConfig& c) -> auto& { return widths(c).value; });

  auto rnd = [](RunConfig& c) -> RndConfig& { return c.experiment.rnd; };
  add_int_list("rnd.hidden",
               [rnd](RunConfig& c) -> auto& { return rnd(c).hidden; });
  add_int("rnd.embed_dim",
          [rnd](RunConfig& c) -> auto& { return rnd(c).embed_dim; });
  add_double("rnd.train_proportion", [rnd](RunConfig& c) -> auto& {
    return rnd(c).train_proportion;
  });
  add_double("rnd.lr", [rnd](RunConfig& c) -> auto& { return rnd(c).lr; });

  auto pm = [](RunConfig& c) -> PointMassConfig& {
    return c.experiment.point_mass;
  };
  add_double("point_mass.start_noise_std",
             [pm](RunConfig& c) -> auto& { return pm(c).start_noise_std; });
  add_double("point_mass.goal_radius",
             [pm](RunConfig& c) -> auto& { return pm(c).goal_radius; });
  add_double("point_mass.gamma",
             [pm](RunConfig& c) -> auto& { return pm(c).gamma; });
  add_int("point_mass.horizon",
          [pm](RunConfig& c) -> auto& { return pm(c).horizon; });

  auto gm = [](RunConfig& c) -> GridMazeConfig& {
    return c.experiment.grid_maze;
  };
  add_double("grid_maze.action_scale",
             [gm](RunConfig& c) -> auto& { return gm(c).action_scale; });
  add_double("grid_maze.start_noise_std",
             [gm](RunConfig& c) -> auto& { return gm(c).start_noise_std; });
  add_double("grid_maze.gamma",
             [gm](RunConfig& c) -> auto& { return gm(c).gamma; });
  add_int("grid_maze.horizon",
          [gm](RunConfig& c) -> auto& { return gm(c).horizon; });

  auto ss = [](RunConfig& c) -> SingleStateConfig& {
    return c.experiment.single_state;
  };
  add_double("single_state.gamma",
             [ss](RunConfig& c) -> auto& { return ss(c).gamma; });
  add_int("single_state.horizon",
          [ss](RunConfig& c) -> auto& { return ss(c).horizon; });

  return b;
}

const std::vector<FieldBinding>& bindings() {
  static const std::vector<FieldBinding> b = make_bindings();
  return b;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  require(r.ec == std::errc(), "cannot format double");
  return std::string(buf, r.ptr);
}

std::string serialize_config(const RunConfig& cfg) {
  RunConfig copy = cfg;
  std::string out;
  for (const auto& f : bindings()) {
    out += f.key;
    out += " = ";
    out += f.get(copy);
    out += '\n';
  }
  return out;
}

RunConfig parse_config_text(const std::string& text) {
  std::map<std::string, const FieldBinding*> by_key;
  for (const auto& f : bindings()) by_key[f.key] = &f;

  RunConfig cfg;
  std::map<std::string, bool> seen;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    require(eq != std::string::npos, "config line has no '=': " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = by_key.find(key);
    require(it != by_key.end(), "unknown config key: " + key);
    require(!seen[key], "repeated config key: " + key);
    seen[key] = true;
    it->second->set(cfg, value);
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open config file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::uint64_t config_hash(const RunConfig& cfg) {
  RunConfig copy = cfg;
  copy.experiment.ooo.seed = 0;
  return fnv1a64(serialize_config(copy));
}

std::string run_dir_name(const RunConfig& cfg, std::uint64_t seed) {
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  return std::string(hex) + "-seed" + std::to_string(seed);
}

}  // namespace ooo
