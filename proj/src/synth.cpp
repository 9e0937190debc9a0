#include "mofa/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mofa {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

double SplitMix64::gaussian() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

std::vector<double> random_direction(SplitMix64& rng, std::size_t dim) {
  std::vector<double> v(dim);
  double sq = 0.0;
  do {
    sq = 0.0;
    for (auto& x : v) {
      x = rng.gaussian();
      sq += x * x;
    }
  } while (sq == 0.0);
  const double n = std::sqrt(sq);
  for (auto& x : v) {
    x /= n;
  }
  return v;
}

std::vector<float> to_unit_float(const std::vector<double>& v) {
  double sq = 0.0;
  for (double x : v) {
    sq += x * x;
  }
  const double n = std::sqrt(sq);
  std::vector<float> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = static_cast<float>(v[i] / n);
  }
  return out;
}

}  // namespace

void validate(const StreamSpec& spec) {
  if (spec.segments.empty()) {
    throw std::invalid_argument("stream spec needs at least one segment");
  }
  if (spec.dim == 0) {
    throw std::invalid_argument("dim must be >= 1");
  }
  if (!(spec.fps > 0.0) || !std::isfinite(spec.fps)) {
    throw std::invalid_argument("fps must be > 0");
  }
  for (std::size_t i = 0; i < spec.segments.size(); ++i) {
    const auto& s = spec.segments[i];
    const std::string where = "segment " + std::to_string(i) + ": ";
    if (s.length == 0) {
      throw std::invalid_argument(where + "length must be >= 1");
    }
    if (!(s.jitter >= 0.0)) {
      throw std::invalid_argument(where + "jitter must be >= 0");
    }
    if (s.kind == SegmentKind::burst && !(s.step >= 10.0 * s.jitter && s.step > 0.0)) {
      throw std::invalid_argument(where + "burst step must be positive and >= 10x jitter");
    }
  }
}

SyntheticStream generate_stream(const StreamSpec& spec) {
  validate(spec);
  SplitMix64 rng(spec.seed);
  std::vector<FeatureFrame> frames;
  AnchorSet anchors;
  std::size_t index = 0;
  for (std::size_t s = 0; s < spec.segments.size(); ++s) {
    const auto& seg = spec.segments[s];
    const bool burst = seg.kind == SegmentKind::burst;
    anchors.items.push_back({static_cast<double>(index) / spec.fps,
                             "segment " + std::to_string(s) + (burst ? " burst" : " static")});
    std::vector<double> current = random_direction(rng, spec.dim);
    for (std::size_t i = 0; i < seg.length; ++i, ++index) {
      std::vector<double> v = current;
      if (burst) {
        if (i > 0) {
          for (auto& x : v) {
            x += seg.step * rng.gaussian();
          }
          double sq = 0.0;
          for (double x : v) {
            sq += x * x;
          }
          for (auto& x : v) {
            x /= std::sqrt(sq);
          }
          current = v;
        }
      } else {
        for (auto& x : v) {
          x += seg.jitter * rng.gaussian();
        }
      }
      frames.push_back({static_cast<float>(static_cast<double>(index) / spec.fps), to_unit_float(v)});
    }
  }
  anchors.duration = static_cast<double>(index) / spec.fps;
  return {FeatureSequence::from_frames(std::move(frames)), std::move(anchors)};
}

StreamSpec static_and_burst_spec(std::size_t dim, std::size_t segment_len, std::uint64_t seed) {
  StreamSpec spec;
  spec.dim = dim;
  spec.fps = 1.0;
  spec.seed = seed;
  for (std::size_t s = 0; s < 6; ++s) {
    SegmentSpec seg;
    seg.length = segment_len;
    seg.kind = s == 3 ? SegmentKind::burst : SegmentKind::static_scene;
    spec.segments.push_back(seg);
  }
  return spec;
}

}  // namespace mofa
