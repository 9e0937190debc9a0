#include "mofa/merger.hpp"

#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mofa {

namespace {

constexpr double kDiscardTieTolerance = 1e-9;

bool has_usable_norm(const std::vector<float>& f) {
  return detail::norm(std::span<const float>(f)) > kMinNorm;
}

}  // namespace

double pair_penalty(const FeatureFrame& a, const FeatureFrame& b) {
  return (1.0 - cosine_sim(a.feature, b.feature)) / 2.0;
}

FeatureFrame merge_pair(const FeatureFrame& a, const FeatureFrame& b) {
  if (a.feature.size() != b.feature.size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  FeatureFrame out;
  out.timestamp = static_cast<float>((static_cast<double>(a.timestamp) + b.timestamp) / 2.0);
  out.feature.resize(a.feature.size());
  for (std::size_t d = 0; d < a.feature.size(); ++d) {
    out.feature[d] = static_cast<float>((static_cast<double>(a.feature[d]) + b.feature[d]) / 2.0);
  }
  return out;
}

ReducedCluster reduce_cluster(std::vector<FeatureFrame> frames, std::size_t target,
                              const MergeConfig& cfg) {
  if (target == 0) {
    throw std::invalid_argument("target must be >= 1");
  }
  if (target > frames.size()) {
    throw std::invalid_argument("target exceeds cluster length");
  }
  if (!(cfg.delta >= 0.0)) {
    throw std::invalid_argument("delta must be >= 0");
  }

  ReducedCluster out;
  out.trace.reserve(frames.size() - target);

  // sims[i] = cosine_sim(frames[i], frames[i + 1]), kept in step with `frames`.
  std::vector<double> sims;
  sims.reserve(frames.size());
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
    sims.push_back(cosine_sim(frames[i].feature, frames[i + 1].feature));
  }
  auto refresh = [&](std::size_t i) {
    if (i + 1 < frames.size()) {
      sims[i] = cosine_sim(frames[i].feature, frames[i + 1].feature);
    }
  };
  auto remove_frame = [&](std::size_t r) {
    frames.erase(frames.begin() + static_cast<std::ptrdiff_t>(r));
    sims.erase(sims.begin() + static_cast<std::ptrdiff_t>(std::min(r, sims.size() - 1)));
    if (r > 0) {
      refresh(r - 1);
    }
  };

  while (frames.size() > target) {
    std::size_t i = 0;
    for (std::size_t j = 1; j < sims.size(); ++j) {
      if (sims[j] > sims[i]) {
        i = j;
      }
    }
    const double penalty = (1.0 - sims[i]) / 2.0;

    bool discard = penalty > cfg.delta;
    FeatureFrame merged;
    if (!discard) {
      merged = merge_pair(frames[i], frames[i + 1]);
      // Averaging two exactly opposed features cancels to zero, which no
      // later similarity can be taken against; thin the pair instead.
      discard = !has_usable_norm(merged.feature);
    }

    if (discard) {
      // Drop the member that is better represented by its other neighbour.
      std::size_t drop = i + 1;
      if (i > 0 && i + 2 < frames.size()) {
        const double left = sims[i - 1];
        const double right = sims[i + 1];
        if (left > right + kDiscardTieTolerance) {
          drop = i;
        }
      }
      remove_frame(drop);
      out.trace.push_back({MergeKind::discarded, i, penalty});
    } else {
      frames[i] = std::move(merged);
      remove_frame(i + 1);
      if (i > 0) {
        refresh(i - 1);
      }
      out.trace.push_back({MergeKind::merged, i, penalty});
    }
  }
  out.frames = std::move(frames);
  return out;
}

}  // namespace mofa
