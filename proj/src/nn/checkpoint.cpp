#include "ooo/nn/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace ooo {

namespace {

void append_f32_le(std::string& out, float f) {
  const auto bits = std::bit_cast<std::uint32_t>(f);
  out.push_back(static_cast<char>(bits & 0xff));
  out.push_back(static_cast<char>((bits >> 8) & 0xff));
  out.push_back(static_cast<char>((bits >> 16) & 0xff));
  out.push_back(static_cast<char>((bits >> 24) & 0xff));
}

float read_f32_le(const unsigned char* p) {
  const std::uint32_t bits =
      static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
      (static_cast<std::uint32_t>(p[2]) << 16) |
      (static_cast<std::uint32_t>(p[3]) << 24);
  return std::bit_cast<float>(bits);
}

}  // namespace

void save_checkpoint(const std::string& path,
                     const std::vector<ConstParamView>& tensors) {
  std::ostringstream manifest;
  std::string blob;
  std::size_t offset = 0;
  for (const auto& t : tensors) {
    require(t.name.find(' ') == std::string::npos &&
                t.name.find('\n') == std::string::npos,
            "save_checkpoint: tensor name must not contain whitespace: " +
                t.name);
    manifest << t.name << ' ' << t.rows << ' ' << t.cols << ' ' << offset
             << '\n';
    for (int j = 0; j < t.size(); ++j)
      append_f32_le(blob, static_cast<float>(t.data[j]));
    offset += static_cast<std::size_t>(t.size()) * 4;
  }
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "save_checkpoint: cannot open " + path);
  out << manifest.str() << "---\n" << blob;
  require(out.good(), "save_checkpoint: write failed for " + path);
}

std::vector<LoadedTensor> load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "load_checkpoint: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string all = buf.str();

  const std::string sep = "---\n";
  std::size_t sep_pos = std::string::npos;
  // the separator sits at the start of a line
  if (all.rfind(sep, 0) == 0) {
    sep_pos = 0;
  } else {
    sep_pos = all.find("\n" + sep);
    if (sep_pos != std::string::npos) sep_pos += 1;
  }
  require(sep_pos != std::string::npos,
          "load_checkpoint: missing manifest separator in " + path);
  const std::string header = all.substr(0, sep_pos);
  const std::size_t blob_start = sep_pos + sep.size();
  const auto* blob =
      reinterpret_cast<const unsigned char*>(all.data()) + blob_start;
  const std::size_t blob_len = all.size() - blob_start;

  std::vector<LoadedTensor> out;
  std::istringstream hs(header);
  std::string line;
  while (std::getline(hs, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    LoadedTensor t;
    std::size_t offset = 0;
    require(static_cast<bool>(ls >> t.name >> t.rows >> t.cols >> offset),
            "load_checkpoint: bad manifest line: " + line);
    require(t.rows >= 0 && t.cols >= 0, "load_checkpoint: bad shape: " + line);
    const std::size_t count = static_cast<std::size_t>(t.rows) *
                              static_cast<std::size_t>(t.cols);
    require(offset + count * 4 <= blob_len,
            "load_checkpoint: tensor exceeds blob: " + t.name);
    t.data.resize(count);
    for (std::size_t j = 0; j < count; ++j)
      t.data[j] = static_cast<double>(read_f32_le(blob + offset + j * 4));
    out.push_back(std::move(t));
  }
  return out;
}

void load_checkpoint_into(const std::string& path,
                          const std::vector<ParamView>& views) {
  const auto tensors = load_checkpoint(path);
  for (const auto& v : views) {
    const LoadedTensor* found = nullptr;
    for (const auto& t : tensors)
      if (t.name == v.name) {
        found = &t;
        break;
      }
    require(found != nullptr, "load_checkpoint_into: missing tensor " + v.name);
    require(found->rows == v.rows && found->cols == v.cols,
            "load_checkpoint_into: shape mismatch for " + v.name);
    for (int j = 0; j < v.size(); ++j)
      v.data[j] = found->data[static_cast<std::size_t>(j)];
  }
}

std::uint64_t param_hash(const std::vector<ConstParamView>& tensors) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& t : tensors) {
    h = fnv1a64(t.name, h);
    const std::int64_t shape[2] = {t.rows, t.cols};
    h = fnv1a64(shape, sizeof(shape), h);
    h = fnv1a64(t.data, static_cast<std::size_t>(t.size()) * sizeof(double),
                h);
  }
  return h;
}

}  // namespace ooo
