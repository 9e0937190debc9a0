#pragma once

#include "mofa/geometry.hpp"

#include <cstddef>
#include <vector>

namespace mofa {

struct MergeConfig {
  /// Pairs whose motion penalty exceeds delta are thinned by discarding a frame
  /// instead of being averaged.
  double delta = 0.3;
};

enum class MergeKind { merged, discarded };

struct MergeEvent {
  MergeKind kind = MergeKind::merged;
  /// Left index of the selected pair in the list as it stood at that step.
  std::size_t pair_index = 0;
  double penalty = 0.0;

  bool operator==(const MergeEvent&) const = default;
};

using MergeTrace = std::vector<MergeEvent>;

struct ReducedCluster {
  std::vector<FeatureFrame> frames;
  MergeTrace trace;
};

/// Motion penalty of an adjacent pair: the set variance of the two features,
/// which equals (1 - cosine_sim) / 2.
double pair_penalty(const FeatureFrame& a, const FeatureFrame& b);

/// Component-wise mean of the stored features and mean of the timestamps.
FeatureFrame merge_pair(const FeatureFrame& a, const FeatureFrame& b);

/// Shrinks an ordered cluster to `target` frames. Each step picks the adjacent
/// pair with the highest cosine similarity (lowest index on ties). If its
/// penalty exceeds delta, the member that better matches its other neighbour
/// is dropped (the later one when either member has no other neighbour or
/// the similarities tie within 1e-9); otherwise the pair is replaced by
/// merge_pair.
ReducedCluster reduce_cluster(std::vector<FeatureFrame> frames, std::size_t target,
                              const MergeConfig& cfg);

}  // namespace mofa
