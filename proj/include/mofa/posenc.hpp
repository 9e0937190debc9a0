#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mofa {

/// Row-major L x D positional-embedding table of finite floats.
class EmbeddingTable {
public:
  EmbeddingTable() = default;

  /// Throws std::invalid_argument on a zero dimension, a size mismatch or a
  /// non-finite value.
  EmbeddingTable(std::size_t rows, std::size_t dim, std::vector<float> values);

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }
  std::span<const float> row(std::size_t i) const { return {values_.data() + i * dim_, dim_}; }
  const std::vector<float>& values() const { return values_; }

  bool operator==(const EmbeddingTable&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<float> values_;
};

/// out[i] = table[i mod L] for i in [0, new_len).
EmbeddingTable extend_periodic(const EmbeddingTable& table, std::size_t new_len);

/// Linear resampling on an endpoint-aligned grid: output row j sits at input
/// position j (L - 1) / (new_len - 1). Requires L >= 2 and new_len >= 2.
EmbeddingTable extend_interpolate(const EmbeddingTable& table, std::size_t new_len);

}  // namespace mofa
