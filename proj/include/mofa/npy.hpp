#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace mofa {

/// Malformed or unsupported file contents.
class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major float32 matrix as stored in a .npy container.
struct NpyMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> data;

  bool operator==(const NpyMatrix&) const = default;
};

/// Reads a version 1.x/2.x .npy array of dtype '<f4', C order, rank 2.
/// Throws FormatError ("bad magic", "unsupported dtype", "unsupported order",
/// "shape rank must be 2", "truncated data", ...).
NpyMatrix read_npy(std::istream& in);
NpyMatrix read_npy(const std::filesystem::path& path);

/// Writes a canonical version 1.0 file: fixed dict layout padded with spaces
/// so the data starts on a 64-byte boundary, little-endian float32 payload.
void write_npy(std::ostream& out, const NpyMatrix& m);
void write_npy(const std::filesystem::path& path, const NpyMatrix& m);

}  // namespace mofa
