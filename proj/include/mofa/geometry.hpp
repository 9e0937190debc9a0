#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mofa {

/// Smallest Euclidean norm a feature vector may have.
inline constexpr double kMinNorm = 1e-8;

/// One timestamped feature vector. Features are stored as 32-bit floats;
/// all arithmetic on them accumulates in double.
struct FeatureFrame {
  float timestamp = 0.0f;
  std::vector<float> feature;

  bool operator==(const FeatureFrame&) const = default;
};

/// Ordered sequence of frames sharing one dimension.
///
/// A sequence built through `from_frames` satisfies: every frame has exactly
/// `dim()` finite components with norm > kMinNorm, timestamps are finite and
/// non-negative, and timestamps are strictly increasing. Sequences produced by
/// merging only guarantee nondecreasing timestamps, so they are assembled with
/// `from_frames_unchecked_order`.
class FeatureSequence {
public:
  FeatureSequence() = default;

  /// Validates the ingestion invariants; throws std::invalid_argument.
  static FeatureSequence from_frames(std::vector<FeatureFrame> frames);

  /// Validates everything except strict timestamp ordering (nondecreasing is
  /// still required).
  static FeatureSequence from_frames_unchecked_order(std::vector<FeatureFrame> frames);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return frames_.size(); }
  bool empty() const { return frames_.empty(); }

  const FeatureFrame& operator[](std::size_t i) const { return frames_[i]; }
  const std::vector<FeatureFrame>& frames() const { return frames_; }

  auto begin() const { return frames_.begin(); }
  auto end() const { return frames_.end(); }

  bool operator==(const FeatureSequence&) const = default;

private:
  FeatureSequence(std::size_t dim, std::vector<FeatureFrame> frames)
      : dim_(dim), frames_(std::move(frames)) {}

  std::size_t dim_ = 0;
  std::vector<FeatureFrame> frames_;
};

/// Contiguous partition of [0, n) given by boundaries b_0 = 0 < b_1 < ... < b_U = n.
/// Cluster k covers frames [b_k, b_{k+1}).
class Partition {
public:
  Partition() = default;

  /// Throws std::invalid_argument unless the boundaries are strictly
  /// increasing, start at 0 and hold at least one cluster.
  explicit Partition(std::vector<std::size_t> boundaries);

  const std::vector<std::size_t>& boundaries() const { return boundaries_; }
  std::size_t cluster_count() const { return boundaries_.empty() ? 0 : boundaries_.size() - 1; }
  std::size_t frame_count() const { return boundaries_.empty() ? 0 : boundaries_.back(); }
  std::size_t begin(std::size_t k) const { return boundaries_[k]; }
  std::size_t end(std::size_t k) const { return boundaries_[k + 1]; }
  std::size_t cluster_size(std::size_t k) const { return end(k) - begin(k); }
  std::vector<std::size_t> sizes() const;

  bool operator==(const Partition&) const = default;

private:
  std::vector<std::size_t> boundaries_;
};

struct ClusterStats {
  std::vector<double> centroid;
  double variance = 0.0;
  double motion_score = 0.0;
};

/// Cosine similarity accumulated in double, clamped to [-1, 1].
/// Throws std::invalid_argument on dimension mismatch or a zero-norm input.
double cosine_sim(std::span<const float> a, std::span<const float> b);

/// Mean squared distance of the L2-normalized members from their centroid.
/// For two vectors this equals (1 - cosine_sim) / 2; it lies in [0, 1].
double set_variance(std::span<const std::span<const float>> vectors);
double set_variance(const FeatureSequence& seq, std::size_t begin, std::size_t end);

/// Component-wise mean of the L2-normalized members of frames [begin, end).
std::vector<double> normalized_centroid(const FeatureSequence& seq, std::size_t begin,
                                        std::size_t end);

/// Sum over clusters of (1 - cosine_sim(f_t, c_k)) with c_k the normalized centroid.
double cluster_objective(const FeatureSequence& seq, const Partition& partition);

/// Centroid and variance of cluster k; motion_score is left at 0 and filled
/// in by the allocator.
ClusterStats cluster_stats(const FeatureSequence& seq, const Partition& partition, std::size_t k);

/// Throws std::invalid_argument unless `partition` covers `seq` exactly.
void check_partition(const FeatureSequence& seq, const Partition& partition);

}  // namespace mofa
