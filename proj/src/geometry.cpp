#include "mofa/geometry.hpp"

#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mofa {

namespace {

void validate_frames(const std::vector<FeatureFrame>& frames, bool strict_order) {
  if (frames.empty()) {
    return;
  }
  const std::size_t dim = frames.front().feature.size();
  if (dim == 0) {
    throw std::invalid_argument("feature dimension must be positive");
  }
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto& f = frames[i];
    if (f.feature.size() != dim) {
      throw std::invalid_argument("frame " + std::to_string(i) + " has dimension " +
                                  std::to_string(f.feature.size()) + ", expected " +
                                  std::to_string(dim));
    }
    if (!std::isfinite(f.timestamp) || f.timestamp < 0.0f) {
      throw std::invalid_argument("frame " + std::to_string(i) + " has invalid timestamp");
    }
    double sq = 0.0;
    for (float v : f.feature) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("frame " + std::to_string(i) + " has non-finite feature");
      }
      sq += static_cast<double>(v) * v;
    }
    if (std::sqrt(sq) <= kMinNorm) {
      throw std::invalid_argument("frame " + std::to_string(i) + " has zero-norm feature");
    }
    if (i > 0) {
      const float prev = frames[i - 1].timestamp;
      if (strict_order ? !(f.timestamp > prev) : f.timestamp < prev) {
        throw std::invalid_argument(strict_order ? "non-increasing timestamps"
                                                 : "decreasing timestamps");
      }
    }
  }
}

}  // namespace

FeatureSequence FeatureSequence::from_frames(std::vector<FeatureFrame> frames) {
  validate_frames(frames, true);
  const std::size_t dim = frames.empty() ? 0 : frames.front().feature.size();
  return FeatureSequence(dim, std::move(frames));
}

FeatureSequence FeatureSequence::from_frames_unchecked_order(std::vector<FeatureFrame> frames) {
  validate_frames(frames, false);
  const std::size_t dim = frames.empty() ? 0 : frames.front().feature.size();
  return FeatureSequence(dim, std::move(frames));
}

Partition::Partition(std::vector<std::size_t> boundaries) : boundaries_(std::move(boundaries)) {
  if (boundaries_.size() < 2) {
    throw std::invalid_argument("partition needs at least one cluster");
  }
  if (boundaries_.front() != 0) {
    throw std::invalid_argument("partition must start at 0");
  }
  for (std::size_t i = 1; i < boundaries_.size(); ++i) {
    if (boundaries_[i] <= boundaries_[i - 1]) {
      throw std::invalid_argument("partition boundaries must be strictly increasing");
    }
  }
}

std::vector<std::size_t> Partition::sizes() const {
  std::vector<std::size_t> out;
  out.reserve(cluster_count());
  for (std::size_t k = 0; k < cluster_count(); ++k) {
    out.push_back(cluster_size(k));
  }
  return out;
}

double cosine_sim(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch");
  }
  const double na = detail::norm(a);
  const double nb = detail::norm(b);
  if (na <= kMinNorm || nb <= kMinNorm) {
    throw std::invalid_argument("zero-norm input");
  }
  return std::clamp(detail::dot(a, b) / (na * nb), -1.0, 1.0);
}

double set_variance(std::span<const std::span<const float>> vectors) {
  if (vectors.empty()) {
    throw std::invalid_argument("variance of an empty set");
  }
  const std::size_t dim = vectors.front().size();
  std::vector<std::vector<double>> unit;
  unit.reserve(vectors.size());
  std::vector<double> centroid(dim, 0.0);
  for (auto v : vectors) {
    if (v.size() != dim) {
      throw std::invalid_argument("dimension mismatch");
    }
    auto u = detail::normalized(v);
    for (std::size_t d = 0; d < dim; ++d) {
      centroid[d] += u[d];
    }
    unit.push_back(std::move(u));
  }
  const double n = static_cast<double>(vectors.size());
  for (double& c : centroid) {
    c /= n;
  }
  double total = 0.0;
  for (const auto& u : unit) {
    double sq = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = u[d] - centroid[d];
      sq += diff * diff;
    }
    total += sq;
  }
  return std::max(0.0, total / n);
}

double set_variance(const FeatureSequence& seq, std::size_t begin, std::size_t end) {
  std::vector<std::span<const float>> views;
  views.reserve(end - begin);
  for (std::size_t i = begin; i < end; ++i) {
    views.emplace_back(seq[i].feature);
  }
  return set_variance(views);
}

std::vector<double> normalized_centroid(const FeatureSequence& seq, std::size_t begin,
                                        std::size_t end) {
  if (begin >= end || end > seq.size()) {
    throw std::invalid_argument("invalid frame range");
  }
  std::vector<double> centroid(seq.dim(), 0.0);
  for (std::size_t i = begin; i < end; ++i) {
    detail::add_normalized(seq[i].feature, centroid);
  }
  const double n = static_cast<double>(end - begin);
  for (double& c : centroid) {
    c /= n;
  }
  return centroid;
}

void check_partition(const FeatureSequence& seq, const Partition& partition) {
  if (partition.cluster_count() == 0 || partition.frame_count() != seq.size()) {
    throw std::invalid_argument("invalid partition: covers " +
                                std::to_string(partition.frame_count()) + " frames, sequence has " +
                                std::to_string(seq.size()));
  }
}

double cluster_objective(const FeatureSequence& seq, const Partition& partition) {
  check_partition(seq, partition);
  double total = 0.0;
  for (std::size_t k = 0; k < partition.cluster_count(); ++k) {
    const auto centroid = normalized_centroid(seq, partition.begin(k), partition.end(k));
    const double cn = detail::norm(std::span<const double>(centroid));
    for (std::size_t t = partition.begin(k); t < partition.end(k); ++t) {
      // A zero centroid (antipodal members cancelling out) leaves every member at
      // similarity 0.
      double sim = 0.0;
      if (cn > 0.0) {
        const auto& f = seq[t].feature;
        sim = std::clamp(detail::dot(std::span<const float>(f), std::span<const double>(centroid)) /
                             (detail::norm(std::span<const float>(f)) * cn),
                         -1.0, 1.0);
      }
      total += 1.0 - sim;
    }
  }
  return std::max(0.0, total);
}

ClusterStats cluster_stats(const FeatureSequence& seq, const Partition& partition, std::size_t k) {
  check_partition(seq, partition);
  if (k >= partition.cluster_count()) {
    throw std::invalid_argument("cluster index out of range");
  }
  ClusterStats stats;
  stats.centroid = normalized_centroid(seq, partition.begin(k), partition.end(k));
  stats.variance = set_variance(seq, partition.begin(k), partition.end(k));
  return stats;
}

}  // namespace mofa
