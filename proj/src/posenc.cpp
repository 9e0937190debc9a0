#include "mofa/posenc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mofa {

EmbeddingTable::EmbeddingTable(std::size_t rows, std::size_t dim, std::vector<float> values)
    : rows_(rows), dim_(dim), values_(std::move(values)) {
  if (rows_ == 0 || dim_ == 0) {
    throw std::invalid_argument("embedding table needs at least one row and one column");
  }
  if (values_.size() != rows_ * dim_) {
    throw std::invalid_argument("embedding table size does not match its shape");
  }
  for (float v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("embedding table holds a non-finite value");
    }
  }
}

EmbeddingTable extend_periodic(const EmbeddingTable& table, std::size_t new_len) {
  if (new_len == 0) {
    throw std::invalid_argument("new length must be >= 1");
  }
  std::vector<float> values;
  values.reserve(new_len * table.dim());
  for (std::size_t i = 0; i < new_len; ++i) {
    const auto src = table.row(i % table.rows());
    values.insert(values.end(), src.begin(), src.end());
  }
  return EmbeddingTable(new_len, table.dim(), std::move(values));
}

EmbeddingTable extend_interpolate(const EmbeddingTable& table, std::size_t new_len) {
  if (table.rows() < 2) {
    throw std::invalid_argument("interpolation needs a table with at least 2 rows");
  }
  if (new_len < 2) {
    throw std::invalid_argument("new length must be >= 2");
  }
  const std::size_t last = table.rows() - 1;
  std::vector<float> values;
  values.reserve(new_len * table.dim());
  for (std::size_t j = 0; j < new_len; ++j) {
    const double pos = static_cast<double>(j * last) / static_cast<double>(new_len - 1);
    const auto lo = std::min(static_cast<std::size_t>(std::floor(pos)), last);
    const double frac = pos - static_cast<double>(lo);
    const auto a = table.row(lo);
    if (lo == last || frac == 0.0) {
      values.insert(values.end(), a.begin(), a.end());
      continue;
    }
    const auto b = table.row(lo + 1);
    for (std::size_t d = 0; d < table.dim(); ++d) {
      values.push_back(static_cast<float>((1.0 - frac) * a[d] + frac * b[d]));
    }
  }
  return EmbeddingTable(new_len, table.dim(), std::move(values));
}

}  // namespace mofa
