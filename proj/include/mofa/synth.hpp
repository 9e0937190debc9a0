#pragma once

#include "mofa/geometry.hpp"
#include "mofa/sdvc_eval.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mofa {

/// splitmix64 generator. The sequence is fixed by the seed alone, so streams
/// are reproducible across platforms and languages.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in (0, 1], from the top 53 bits of one draw.
  double uniform();
  /// Standard normal via Box-Muller over two draws (cosine branch only).
  double gaussian();

private:
  std::uint64_t state_;
};

enum class SegmentKind { static_scene, burst };

struct SegmentSpec {
  std::size_t length = 0;
  SegmentKind kind = SegmentKind::static_scene;
  /// Per-component gaussian jitter around a static segment's base direction.
  double jitter = 0.01;
  /// Per-component gaussian step of a burst segment's random walk; must be at
  /// least 10x the jitter.
  double step = 0.2;
};

struct StreamSpec {
  std::size_t dim = 64;
  std::vector<SegmentSpec> segments;
  double fps = 1.0;
  std::uint64_t seed = 0;
};

struct SyntheticStream {
  FeatureSequence features;
  AnchorSet anchors;  ///< one anchor at each segment start
};

/// Throws std::invalid_argument on an empty segment list, a zero-length
/// segment, negative jitter, a burst step below 10x jitter, fps <= 0 or dim == 0.
void validate(const StreamSpec& spec);

/// Static segments emit base + N(0, jitter^2) per component, renormalized.
/// Burst segments walk on the unit sphere, adding N(0, step^2) per component
/// and renormalizing each frame. Timestamps are frame_index / fps.
SyntheticStream generate_stream(const StreamSpec& spec);

/// Five static segments and one burst (fourth) of `segment_len` frames each.
StreamSpec static_and_burst_spec(std::size_t dim, std::size_t segment_len, std::uint64_t seed);

}  // namespace mofa
