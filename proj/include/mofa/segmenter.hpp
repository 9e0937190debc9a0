#pragma once

#include "mofa/geometry.hpp"

#include <cstddef>

namespace mofa {

struct SegmenterConfig {
  std::size_t num_clusters = 6;
  std::size_t max_iters = 100;
  /// Sequences up to this length are segmented exactly by dynamic programming.
  std::size_t exact_threshold = 512;
  /// Worker count for the segment-cost table; 0 = auto. Output does not depend on it.
  std::size_t threads = 0;
};

/// u contiguous near-equal segments of [0, n); the first n % u segments get
/// one extra frame.
Partition init_partition(std::size_t n, std::size_t u);

/// Contiguous clustering minimizing cluster_objective. Exact when
/// seq.size() <= cfg.exact_threshold, boundary coordinate descent from
/// init_partition otherwise.
Partition segment(const FeatureSequence& seq, const SegmenterConfig& cfg);

/// Global minimizer of cluster_objective over all contiguous u-partitions.
/// O(N^2 D) cost precomputation plus O(u N^2) recursion. Among (near-)equal
/// optima the lexicographically smallest boundary list wins.
Partition dp_optimal_partition(const FeatureSequence& seq, std::size_t u, std::size_t threads = 0);

/// Lloyd-style boundary sweep: each interior boundary moves to the position
/// between its neighbours that minimizes the two adjacent segment costs
/// (smallest index on ties). Stops after a sweep with no move or after
/// max_iters sweeps. Never increases the objective of `start`.
Partition descend_partition(const FeatureSequence& seq, Partition start, std::size_t max_iters);

}  // namespace mofa
