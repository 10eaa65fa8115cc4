#include "ooo/data/dataset_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ooo {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::runtime_error parse_error(const std::string& path, int line_no,
                               const std::string& what) {
  std::ostringstream os;
  os << path << ":" << line_no << ": " << what;
  return std::runtime_error(os.str());
}

// splits on '|', trims nothing (stream extraction skips spaces)
std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t bar = line.find('|', start);
    if (bar == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, bar - start));
    start = bar + 1;
  }
}

std::vector<double> parse_numbers(const std::string& field,
                                  const std::string& path, int line_no) {
  std::istringstream is(field);
  std::vector<double> out;
  double v = 0.0;
  while (is >> v) out.push_back(v);
  if (!is.eof()) throw parse_error(path, line_no, "non-numeric field");
  return out;
}

}  // namespace

void save_dataset(const TransitionBuffer& buffer, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "save_dataset: cannot open " + path);
  out << "state_dim=" << buffer.state_dim()
      << " action_dim=" << buffer.action_dim() << "\n";
  const auto& ends = buffer.boundaries();
  std::size_t next_end = 0;
  for (int i = 0; i < buffer.size(); ++i) {
    const Transition& t = buffer[i];
    for (int j = 0; j < t.state.size(); ++j)
      out << (j ? " " : "") << fmt(t.state(j));
    out << " | ";
    for (int j = 0; j < t.action.size(); ++j)
      out << (j ? " " : "") << fmt(t.action(j));
    out << " | " << fmt(t.reward) << " | ";
    for (int j = 0; j < t.next_state.size(); ++j)
      out << (j ? " " : "") << fmt(t.next_state(j));
    out << " | " << (t.terminal ? 1 : 0) << "\n";
    if (next_end < ends.size() && ends[next_end] == i + 1) {
      out << "---\n";
      ++next_end;
    }
  }
  require(out.good(), "save_dataset: write failed for " + path);
}

TransitionBuffer load_dataset(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "load_dataset: cannot open " + path);

  std::string line;
  int line_no = 0;
  require(static_cast<bool>(std::getline(in, line)),
          "load_dataset: empty file " + path);
  ++line_no;
  int sd = -1, ad = -1;
  if (std::sscanf(line.c_str(), "state_dim=%d action_dim=%d", &sd, &ad) != 2 ||
      sd <= 0 || ad <= 0)
    throw parse_error(path, line_no, "malformed header");

  TransitionBuffer buffer(sd, ad);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line == "---") {
      buffer.end_trajectory();
      continue;
    }
    const auto fields = split_fields(line);
    if (fields.size() != 5)
      throw parse_error(path, line_no, "expected 5 '|'-separated fields");
    const auto s = parse_numbers(fields[0], path, line_no);
    const auto a = parse_numbers(fields[1], path, line_no);
    const auto r = parse_numbers(fields[2], path, line_no);
    const auto s2 = parse_numbers(fields[3], path, line_no);
    const auto t = parse_numbers(fields[4], path, line_no);
    if (static_cast<int>(s.size()) != sd)
      throw parse_error(path, line_no, "state has wrong dimension");
    if (static_cast<int>(a.size()) != ad)
      throw parse_error(path, line_no, "action has wrong dimension");
    if (r.size() != 1) throw parse_error(path, line_no, "reward must be one number");
    if (static_cast<int>(s2.size()) != sd)
      throw parse_error(path, line_no, "next state has wrong dimension");
    if (t.size() != 1 || (t[0] != 0.0 && t[0] != 1.0))
      throw parse_error(path, line_no, "terminal flag must be 0 or 1");

    Transition tr;
    tr.state = Eigen::Map<const Vec>(s.data(), sd);
    tr.action = Eigen::Map<const Vec>(a.data(), ad);
    tr.reward = r[0];
    tr.next_state = Eigen::Map<const Vec>(s2.data(), sd);
    tr.terminal = t[0] == 1.0;
    buffer.append(tr);
  }
  return buffer;
}

}  // namespace ooo
