#include "mofa/allocator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mofa {

namespace {

// Absorbs representation error in R_origin * (1 + s) before flooring,
// e.g. 10 * (1 + 0.7) evaluating to 16.999999999999996.
constexpr double kFloorSlack = 1e-9;

std::size_t total(const std::vector<std::size_t>& v) {
  return std::accumulate(v.begin(), v.end(), std::size_t{0});
}

void check_feasible(const std::vector<std::size_t>& sizes, std::size_t n_p) {
  if (sizes.empty()) {
    throw std::invalid_argument("at least one cluster is required");
  }
  if (std::find(sizes.begin(), sizes.end(), std::size_t{0}) != sizes.end()) {
    throw std::invalid_argument("cluster sizes must be positive");
  }
  if (n_p < sizes.size()) {
    throw std::invalid_argument("target length " + std::to_string(n_p) +
                                " is below the cluster count " + std::to_string(sizes.size()));
  }
  if (n_p > total(sizes)) {
    throw std::invalid_argument("target length " + std::to_string(n_p) +
                                " exceeds the frame count " + std::to_string(total(sizes)));
  }
}

}  // namespace

std::vector<double> motion_scores_from_variances(const std::vector<double>& variances) {
  double peak = 0.0;
  for (double v : variances) {
    if (!(v >= 0.0)) {
      throw std::invalid_argument("variances must be non-negative");
    }
    peak = std::max(peak, v);
  }
  std::vector<double> scores(variances.size(), 0.0);
  if (peak > 0.0) {
    for (std::size_t k = 0; k < variances.size(); ++k) {
      scores[k] = std::clamp(variances[k] / peak, 0.0, 1.0);
    }
  }
  return scores;
}

std::vector<double> motion_scores(const FeatureSequence& seq, const Partition& partition) {
  check_partition(seq, partition);
  std::vector<double> variances;
  variances.reserve(partition.cluster_count());
  for (std::size_t k = 0; k < partition.cluster_count(); ++k) {
    variances.push_back(set_variance(seq, partition.begin(k), partition.end(k)));
  }
  return motion_scores_from_variances(variances);
}

std::vector<std::size_t> origin_budgets(const std::vector<std::size_t>& sizes, std::size_t n_p) {
  const std::size_t n_o = total(sizes);
  if (n_o == 0) {
    throw std::invalid_argument("empty cluster sizes");
  }
  std::vector<std::size_t> out;
  out.reserve(sizes.size());
  for (std::size_t size : sizes) {
    out.push_back(n_p * size / n_o);
  }
  return out;
}

std::vector<std::size_t> raw_budgets(const std::vector<std::size_t>& sizes,
                                     const std::vector<double>& scores, std::size_t n_p) {
  check_feasible(sizes, n_p);
  if (scores.size() != sizes.size()) {
    throw std::invalid_argument("one score per cluster is required");
  }
  const auto origin = origin_budgets(sizes, n_p);
  std::vector<std::size_t> out(sizes.size());
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    const double s = scores[k];
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::invalid_argument("motion scores must lie in [0, 1]");
    }
    const auto boosted = static_cast<std::size_t>(
        std::floor(static_cast<double>(origin[k]) * (1.0 + s) + kFloorSlack));
    out[k] = std::max<std::size_t>(1, std::min(boosted, sizes[k]));
  }
  return out;
}

std::vector<std::size_t> scale_budgets(const std::vector<std::size_t>& r_raw,
                                       const std::vector<std::size_t>& sizes, std::size_t n_p) {
  check_feasible(sizes, n_p);
  if (r_raw.size() != sizes.size()) {
    throw std::invalid_argument("one raw budget per cluster is required");
  }
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (r_raw[k] < 1 || r_raw[k] > sizes[k]) {
      throw std::invalid_argument("raw budgets must lie in [1, cluster size]");
    }
  }
  const std::size_t raw_total = total(r_raw);
  const std::size_t u = sizes.size();

  // Quotas r_raw[k] * n_p / raw_total, kept as exact integer quotient + remainder.
  std::vector<std::size_t> out(u);
  std::vector<std::size_t> remainder(u);
  for (std::size_t k = 0; k < u; ++k) {
    const std::size_t scaled = r_raw[k] * n_p;
    out[k] = scaled / raw_total;
    remainder[k] = scaled % raw_total;
  }

  // Largest remainder first, ties to the lower index.
  std::vector<std::size_t> order(u);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  std::size_t assigned = total(out);
  for (std::size_t i = 0; assigned < n_p; ++i) {
    ++out[order[i % u]];
    ++assigned;
  }

  for (std::size_t k = 0; k < u; ++k) {
    out[k] = std::clamp<std::size_t>(out[k], 1, sizes[k]);
  }

  // Clamping may leave the total off; repair one unit at a time. Units go to
  // the cluster with the largest remainder that still has room and come from
  // the cluster with the smallest remainder that is above 1.
  assigned = total(out);
  while (assigned < n_p) {
    std::size_t pick = u;
    for (std::size_t k = 0; k < u; ++k) {
      if (out[k] < sizes[k] && (pick == u || remainder[k] > remainder[pick])) {
        pick = k;
      }
    }
    if (pick == u) {
      throw std::logic_error("budget repair found no cluster with room");
    }
    ++out[pick];
    ++assigned;
  }
  while (assigned > n_p) {
    std::size_t pick = u;
    for (std::size_t k = 0; k < u; ++k) {
      if (out[k] > 1 && (pick == u || remainder[k] < remainder[pick])) {
        pick = k;
      }
    }
    if (pick == u) {
      throw std::logic_error("budget repair found no cluster above its minimum");
    }
    --out[pick];
    --assigned;
  }
  return out;
}

Allocation allocate(const std::vector<std::size_t>& sizes, const std::vector<double>& scores,
                    std::size_t n_p) {
  Allocation a;
  a.r_origin = origin_budgets(sizes, n_p);
  a.r_raw = raw_budgets(sizes, scores, n_p);
  a.r_final = scale_budgets(a.r_raw, sizes, n_p);
  return a;
}

}  // namespace mofa
