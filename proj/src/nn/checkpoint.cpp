#include "slicing/nn/checkpoint.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace slicing::nn {

namespace {
constexpr const char* kMagic = "slicing-checkpoint";
constexpr int kVersion = 1;
}  // namespace

void write_checkpoint(std::ostream& out, const Checkpoint& ck) {
  out << kMagic << ' ' << kVersion << ' ' << ck.size() << '\n';
  char buf[64];
  for (const auto& [name, blob] : ck) {
    out << name << ' ' << blob.shape << ' ' << blob.values.size() << '\n';
    for (std::size_t i = 0; i < blob.values.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%a", blob.values[i]);
      out << buf << (i + 1 == blob.values.size() || i % 8 == 7 ? '\n' : ' ');
    }
  }
}

Checkpoint read_checkpoint(std::istream& in) {
  std::string magic;
  int version = 0;
  std::size_t count = 0;
  if (!(in >> magic >> version >> count) || magic != kMagic) throw std::runtime_error("not a checkpoint");
  if (version != kVersion) throw std::runtime_error("unsupported checkpoint version");
  Checkpoint ck;
  for (std::size_t b = 0; b < count; ++b) {
    std::string name;
    Blob blob;
    std::size_t n = 0;
    if (!(in >> name >> blob.shape >> n)) throw std::runtime_error("truncated checkpoint");
    blob.values.resize(n);
    std::string tok;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(in >> tok)) throw std::runtime_error("truncated checkpoint");
      char* end = nullptr;
      blob.values[i] = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') throw std::runtime_error("bad value in checkpoint: " + tok);
    }
    ck.emplace(std::move(name), std::move(blob));
  }
  return ck;
}

void save_checkpoint(const std::filesystem::path& file, const Checkpoint& ck) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  write_checkpoint(out, ck);
}

Checkpoint load_checkpoint(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  return read_checkpoint(in);
}

void restore(const Checkpoint& ck, const std::string& name, const std::string& shape,
             Buffer& dst) {
  const auto it = ck.find(name);
  if (it == ck.end()) throw std::runtime_error("checkpoint has no blob " + name);
  if (it->second.shape != shape || it->second.values.size() != dst.size())
    throw std::runtime_error("checkpoint blob " + name + " has shape " + it->second.shape + ", expected " + shape);
  dst = it->second.values;
}

}  // namespace slicing::nn
