#include "mofa/compressor.hpp"

#include "mofa/allocator.hpp"
#include "mofa/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace mofa {

namespace {

std::size_t count_kind(const std::vector<MergeTrace>& traces, MergeKind kind) {
  std::size_t n = 0;
  for (const auto& trace : traces) {
    n += static_cast<std::size_t>(
        std::count_if(trace.begin(), trace.end(), [&](const MergeEvent& e) { return e.kind == kind; }));
  }
  return n;
}

}  // namespace

std::size_t CompressionReport::merge_count() const { return count_kind(traces, MergeKind::merged); }

std::size_t CompressionReport::discard_count() const {
  return count_kind(traces, MergeKind::discarded);
}

void validate(const CompressionConfig& cfg) {
  if (cfg.target_len == 0) {
    throw std::invalid_argument("target-len must be ≥ 1");
  }
  if (cfg.num_clusters == 0) {
    throw std::invalid_argument("clusters must be ≥ 1");
  }
  if (!(cfg.delta >= 0.0)) {
    throw std::invalid_argument("delta must be ≥ 0");
  }
  if (cfg.max_iters == 0) {
    throw std::invalid_argument("max-iters must be ≥ 1");
  }
}

CompressionResult compress(const FeatureSequence& seq, const CompressionConfig& cfg) {
  validate(cfg);
  if (seq.empty()) {
    throw std::invalid_argument("cannot compress an empty sequence");
  }
  const auto started = std::chrono::steady_clock::now();

  CompressionResult result;
  auto& report = result.report;
  report.input_len = seq.size();

  if (seq.size() <= cfg.target_len) {
    result.sequence = seq;
    report.output_len = seq.size();
    report.passthrough = true;
    report.clusters = 0;
  } else {
    const std::size_t u = std::min({cfg.num_clusters, cfg.target_len, seq.size()});
    SegmenterConfig seg_cfg;
    seg_cfg.num_clusters = u;
    seg_cfg.max_iters = cfg.max_iters;
    seg_cfg.exact_threshold = cfg.exact_threshold;
    seg_cfg.threads = cfg.threads;
    const Partition partition = segment(seq, seg_cfg);

    report.clusters = u;
    report.boundaries = partition.boundaries();
    for (std::size_t k = 0; k < u; ++k) {
      report.variances.push_back(set_variance(seq, partition.begin(k), partition.end(k)));
    }
    report.motion_scores = motion_scores_from_variances(report.variances);

    const auto sizes = partition.sizes();
    const Allocation alloc = allocate(sizes, report.motion_scores, cfg.target_len);
    report.r_origin = alloc.r_origin;
    report.r_raw = alloc.r_raw;
    report.r_final = alloc.r_final;

    const MergeConfig merge_cfg{cfg.delta};
    std::vector<ReducedCluster> reduced(u);
    parallel_for(u, cfg.threads, [&](std::size_t k) {
      std::vector<FeatureFrame> frames(seq.frames().begin() + static_cast<std::ptrdiff_t>(partition.begin(k)),
                                       seq.frames().begin() + static_cast<std::ptrdiff_t>(partition.end(k)));
      reduced[k] = reduce_cluster(std::move(frames), alloc.r_final[k], merge_cfg);
    });

    std::vector<FeatureFrame> out;
    out.reserve(cfg.target_len);
    for (auto& cluster : reduced) {
      std::move(cluster.frames.begin(), cluster.frames.end(), std::back_inserter(out));
      report.traces.push_back(std::move(cluster.trace));
    }
    result.sequence = FeatureSequence::from_frames_unchecked_order(std::move(out));
    report.output_len = result.sequence.size();
  }

  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  return result;
}

std::string format_timestamp_prompt(const FeatureSequence& seq) {
  if (seq.empty()) {
    throw std::invalid_argument("cannot describe an empty sequence");
  }
  std::string text = "This video contains " + std::to_string(seq.size()) + " frames sampled at ";
  char buf[64];
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i > 0) {
      text += ", ";
    }
    std::snprintf(buf, sizeof(buf), "%.1f", static_cast<double>(seq[i].timestamp));
    text += buf;
  }
  text += " seconds.";
  return text;
}

TokenBudget plan_token_budget(std::size_t n_frames, std::size_t window_len, std::size_t stride,
                              std::size_t queries_per_window) {
  if (window_len == 0 || stride == 0) {
    throw std::invalid_argument("window length and stride must be >= 1");
  }
  if (n_frames < window_len) {
    throw std::invalid_argument("frame count is shorter than one window");
  }
  if (n_frames % stride != 0) {
    throw std::invalid_argument("stride " + std::to_string(stride) + " does not divide " +
                                std::to_string(n_frames) + " frames");
  }
  TokenBudget b;
  b.window_len = window_len;
  b.stride = stride;
  b.queries_per_window = queries_per_window;
  b.window_count = n_frames / stride;
  b.total_tokens = b.window_count * queries_per_window;
  return b;
}

}  // namespace mofa
