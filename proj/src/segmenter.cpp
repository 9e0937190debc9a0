#include "mofa/segmenter.hpp"

#include "kernels.hpp"
#include "mofa/parallel.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace mofa {

namespace {

// Optima closer than this are treated as ties and resolved toward smaller
// boundaries.
constexpr double kTieTolerance = 1e-9;

void check_cluster_count(std::size_t n, std::size_t u) {
  if (u == 0) {
    throw std::invalid_argument("cluster count must be >= 1");
  }
  if (u > n) {
    throw std::invalid_argument("cluster count " + std::to_string(u) + " exceeds frame count " +
                                std::to_string(n));
  }
}

// Upper-triangular table of segment costs, cost(i, j) for 0 <= i < j <= n.
// The cost of a segment is m - |S| where S is the sum of its m normalized
// members: summing 1 - cos(f_t, S/m) over the members gives exactly that.
class SegmentCostTable {
public:
  SegmentCostTable(const FeatureSequence& seq, std::size_t threads)
      : n_(seq.size()), costs_(n_ * (n_ + 1), 0.0) {
    std::vector<std::vector<double>> unit(n_);
    for (std::size_t t = 0; t < n_; ++t) {
      unit[t] = detail::normalized(seq[t].feature);
    }
    const std::size_t dim = seq.dim();
    parallel_for(n_, threads, [&](std::size_t i) {
      std::vector<double> sum(dim, 0.0);
      double* row = &costs_[i * (n_ + 1)];
      for (std::size_t j = i + 1; j <= n_; ++j) {
        const auto& u = unit[j - 1];
        double sq = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
          sum[d] += u[d];
          sq += sum[d] * sum[d];
        }
        row[j] = std::max(0.0, static_cast<double>(j - i) - std::sqrt(sq));
      }
    });
  }

  double operator()(std::size_t i, std::size_t j) const { return costs_[i * (n_ + 1) + j]; }

private:
  std::size_t n_;
  std::vector<double> costs_;
};

// Segment costs from prefix sums of normalized frames; O(D) per query.
class PrefixCosts {
public:
  explicit PrefixCosts(const FeatureSequence& seq)
      : dim_(seq.dim()), prefix_((seq.size() + 1) * seq.dim(), 0.0) {
    for (std::size_t t = 0; t < seq.size(); ++t) {
      const double* prev = &prefix_[t * dim_];
      double* cur = &prefix_[(t + 1) * dim_];
      const auto u = detail::normalized(seq[t].feature);
      for (std::size_t d = 0; d < dim_; ++d) {
        cur[d] = prev[d] + u[d];
      }
    }
  }

  double operator()(std::size_t i, std::size_t j) const {
    const double* a = &prefix_[i * dim_];
    const double* b = &prefix_[j * dim_];
    double sq = 0.0;
    for (std::size_t d = 0; d < dim_; ++d) {
      const double s = b[d] - a[d];
      sq += s * s;
    }
    return std::max(0.0, static_cast<double>(j - i) - std::sqrt(sq));
  }

private:
  std::size_t dim_;
  std::vector<double> prefix_;
};

}  // namespace

Partition init_partition(std::size_t n, std::size_t u) {
  check_cluster_count(n, u);
  const std::size_t base = n / u;
  const std::size_t extra = n % u;
  std::vector<std::size_t> boundaries{0};
  for (std::size_t k = 0; k < u; ++k) {
    boundaries.push_back(boundaries.back() + base + (k < extra ? 1 : 0));
  }
  return Partition(std::move(boundaries));
}

Partition dp_optimal_partition(const FeatureSequence& seq, std::size_t u, std::size_t threads) {
  const std::size_t n = seq.size();
  check_cluster_count(n, u);
  const SegmentCostTable cost(seq, threads);

  // best[k][i]: minimal cost of splitting the suffix [i, n) into k segments;
  // next[k][i]: end of the first of those segments.
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> best(u + 1, std::vector<double>(n + 1, kInf));
  std::vector<std::vector<std::size_t>> next(u + 1, std::vector<std::size_t>(n + 1, n));
  for (std::size_t i = 0; i < n; ++i) {
    best[1][i] = cost(i, n);
  }
  for (std::size_t k = 2; k <= u; ++k) {
    for (std::size_t i = 0; i + k <= n; ++i) {
      double b = kInf;
      std::size_t arg = n;
      for (std::size_t j = i + 1; j + (k - 1) <= n; ++j) {
        const double v = cost(i, j) + best[k - 1][j];
        if (v < b - kTieTolerance) {
          b = v;
          arg = j;
        }
      }
      best[k][i] = b;
      next[k][i] = arg;
    }
  }

  std::vector<std::size_t> boundaries{0};
  std::size_t i = 0;
  for (std::size_t k = u; k >= 2; --k) {
    i = next[k][i];
    boundaries.push_back(i);
  }
  boundaries.push_back(n);
  return Partition(std::move(boundaries));
}

Partition descend_partition(const FeatureSequence& seq, Partition start, std::size_t max_iters) {
  check_partition(seq, start);
  if (max_iters == 0) {
    throw std::invalid_argument("max_iters must be >= 1");
  }
  const PrefixCosts cost(seq);
  auto b = start.boundaries();
  const std::size_t u = b.size() - 1;
  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    bool moved = false;
    for (std::size_t k = 1; k < u; ++k) {
      const std::size_t left = b[k - 1];
      const std::size_t right = b[k + 1];
      std::size_t arg = b[k];
      double best = cost(left, arg) + cost(arg, right);
      for (std::size_t p = left + 1; p < right; ++p) {
        const double v = cost(left, p) + cost(p, right);
        if (v < best || (v == best && p < arg)) {
          best = v;
          arg = p;
        }
      }
      if (arg != b[k]) {
        b[k] = arg;
        moved = true;
      }
    }
    if (!moved) {
      break;
    }
  }
  return Partition(std::move(b));
}

Partition segment(const FeatureSequence& seq, const SegmenterConfig& cfg) {
  if (cfg.max_iters == 0) {
    throw std::invalid_argument("max_iters must be >= 1");
  }
  check_cluster_count(seq.size(), cfg.num_clusters);
  if (seq.size() <= cfg.exact_threshold) {
    return dp_optimal_partition(seq, cfg.num_clusters, cfg.threads);
  }
  return descend_partition(seq, init_partition(seq.size(), cfg.num_clusters), cfg.max_iters);
}

}  // namespace mofa
