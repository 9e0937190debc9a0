#pragma once

#include "mofa/geometry.hpp"
#include "mofa/merger.hpp"
#include "mofa/segmenter.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace mofa {

struct CompressionConfig {
  std::size_t target_len = 96;
  std::size_t num_clusters = 6;
  double delta = 0.3;
  std::size_t max_iters = 100;
  std::size_t exact_threshold = 512;
  /// Worker cap for the segment-cost table and per-cluster reduction; 0 = auto.
  std::size_t threads = 0;
};

struct CompressionReport {
  std::size_t input_len = 0;
  std::size_t output_len = 0;
  bool passthrough = false;
  /// Cluster count actually used, min(num_clusters, target_len, input_len).
  std::size_t clusters = 0;
  std::vector<std::size_t> boundaries;
  std::vector<double> variances;
  std::vector<double> motion_scores;
  std::vector<std::size_t> r_origin;
  std::vector<std::size_t> r_raw;
  std::vector<std::size_t> r_final;
  std::vector<MergeTrace> traces;
  double elapsed_ms = 0.0;

  std::size_t merge_count() const;
  std::size_t discard_count() const;
};

struct CompressionResult {
  FeatureSequence sequence;
  CompressionReport report;
};

/// Throws std::invalid_argument on target_len == 0, num_clusters == 0,
/// negative delta or max_iters == 0.
void validate(const CompressionConfig& cfg);

/// Segment, score, allocate and reduce each cluster, then concatenate in
/// time order. Output length is min(N_o, target_len); sequences that already
/// fit are returned unchanged.
CompressionResult compress(const FeatureSequence& seq, const CompressionConfig& cfg);

/// "This video contains N frames sampled at t1, t2, ..., tN seconds." with
/// one decimal per timestamp.
std::string format_timestamp_prompt(const FeatureSequence& seq);

/// Token count of a sliding-window aggregator over the compressed frames.
struct TokenBudget {
  std::size_t window_len = 0;
  std::size_t stride = 0;
  std::size_t queries_per_window = 0;
  std::size_t window_count = 0;
  std::size_t total_tokens = 0;
};

/// window_count = n_frames / stride, total_tokens = window_count * queries.
/// Throws std::invalid_argument when stride does not divide n_frames or
/// n_frames < window_len.
TokenBudget plan_token_budget(std::size_t n_frames, std::size_t window_len, std::size_t stride,
                              std::size_t queries_per_window);

}  // namespace mofa
