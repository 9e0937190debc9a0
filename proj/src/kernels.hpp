#pragma once

// Internal dense-vector helpers. Every reduction runs in index order so results
// do not depend on how callers are scheduled across threads.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace mofa::detail {

template <typename A, typename B>
double dot(std::span<const A> a, std::span<const B> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

template <typename T>
double norm(std::span<const T> a) {
  return std::sqrt(dot(a, a));
}

inline std::vector<double> normalized(std::span<const float> v) {
  const double n = norm(v);
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = static_cast<double>(v[i]) / n;
  }
  return out;
}

/// acc += v / |v|
inline void add_normalized(std::span<const float> v, std::span<double> acc) {
  const double n = norm(v);
  for (std::size_t i = 0; i < v.size(); ++i) {
    acc[i] += static_cast<double>(v[i]) / n;
  }
}

}  // namespace mofa::detail
