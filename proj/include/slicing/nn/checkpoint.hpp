#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "slicing/nn/tensor.hpp"

namespace slicing::nn {

struct Blob {
  std::string shape;
  Buffer values;
};

/// Named parameter blobs. The text format stores doubles as hex floats so a
/// save/load cycle is bit exact.
using Checkpoint = std::map<std::string, Blob>;

void write_checkpoint(std::ostream& out, const Checkpoint& ck);
Checkpoint read_checkpoint(std::istream& in);
void save_checkpoint(const std::filesystem::path& file, const Checkpoint& ck);
Checkpoint load_checkpoint(const std::filesystem::path& file);

/// Copies a blob into `dst`, checking the recorded shape.
void restore(const Checkpoint& ck, const std::string& name, const std::string& shape,
             Buffer& dst);

}  // namespace slicing::nn
