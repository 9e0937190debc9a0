#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace mofa {

/// A single predicted or reference commentary anchor. Captions are carried
/// through but not scored.
struct Anchor {
  double timestamp = 0.0;
  std::string caption;

  bool operator==(const Anchor&) const = default;
};

struct AnchorSet {
  std::vector<Anchor> items;
  double duration = 0.0;
};

/// Throws std::invalid_argument unless duration is finite and non-negative
/// and every timestamp lies in [0, duration].
void validate(const AnchorSet& set);

struct EvalConfig {
  double expansion = 5.0;
  std::vector<double> thresholds{0.3, 0.5, 0.7, 0.9};
  double f1_threshold = 0.5;
};

/// Throws std::invalid_argument unless expansion > 0 and every threshold is in (0, 1].
void validate(const EvalConfig& cfg);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct MatchedPair {
  std::size_t pred = 0;
  std::size_t gt = 0;
  double iou = 0.0;
};

struct EvalReport {
  std::size_t num_preds = 0;
  std::size_t num_gts = 0;
  std::vector<double> thresholds;
  std::vector<double> precision;  ///< one per threshold
  std::vector<double> recall;     ///< one per threshold
  double f1_threshold = 0.5;
  double f1 = 0.0;
  std::vector<MatchedPair> matches;
};

/// [max(0, t - expansion), min(duration, t + expansion)].
Interval anchor_window(double t, const EvalConfig& cfg, double duration);

/// Length of the intersection over length of the union. Zero-length unions
/// give 1 for identical intervals and 0 otherwise.
double interval_iou(const Interval& a, const Interval& b);

/// Greedy one-to-one matching by descending IoU (ties: earlier prediction,
/// then earlier reference), then precision/recall per threshold and F1 at
/// cfg.f1_threshold. Pairs with zero overlap are never matched.
EvalReport evaluate(const AnchorSet& preds, const AnchorSet& gts, const EvalConfig& cfg);

}  // namespace mofa
