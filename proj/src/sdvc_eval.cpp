#include "mofa/sdvc_eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace mofa {

void validate(const AnchorSet& set) {
  if (!std::isfinite(set.duration) || set.duration < 0.0) {
    throw std::invalid_argument("duration must be finite and non-negative");
  }
  for (const auto& a : set.items) {
    if (!std::isfinite(a.timestamp) || a.timestamp < 0.0 || a.timestamp > set.duration) {
      throw std::invalid_argument("anchor timestamp outside [0, duration]");
    }
  }
}

void validate(const EvalConfig& cfg) {
  if (!(cfg.expansion > 0.0) || !std::isfinite(cfg.expansion)) {
    throw std::invalid_argument("expansion must be > 0");
  }
  for (double th : cfg.thresholds) {
    if (!(th > 0.0 && th <= 1.0)) {
      throw std::invalid_argument("IoU thresholds must lie in (0, 1]");
    }
  }
  if (!(cfg.f1_threshold > 0.0 && cfg.f1_threshold <= 1.0)) {
    throw std::invalid_argument("F1 threshold must lie in (0, 1]");
  }
}

Interval anchor_window(double t, const EvalConfig& cfg, double duration) {
  if (!(t >= 0.0 && t <= duration)) {
    throw std::invalid_argument("anchor timestamp outside [0, duration]");
  }
  return {std::max(0.0, t - cfg.expansion), std::min(duration, t + cfg.expansion)};
}

double interval_iou(const Interval& a, const Interval& b) {
  if (a.lo > a.hi || b.lo > b.hi) {
    throw std::invalid_argument("inverted interval");
  }
  const double inter = std::max(0.0, std::min(a.hi, b.hi) - std::max(a.lo, b.lo));
  const double uni = (a.hi - a.lo) + (b.hi - b.lo) - inter;
  if (uni <= 0.0) {
    return (a.lo == b.lo && a.hi == b.hi) ? 1.0 : 0.0;
  }
  return std::clamp(inter / uni, 0.0, 1.0);
}

EvalReport evaluate(const AnchorSet& preds, const AnchorSet& gts, const EvalConfig& cfg) {
  validate(cfg);
  validate(preds);
  validate(gts);
  if (preds.duration != gts.duration) {
    throw std::invalid_argument("prediction and reference durations differ");
  }
  const double duration = preds.duration;

  std::vector<Interval> pw, gw;
  for (const auto& a : preds.items) {
    pw.push_back(anchor_window(a.timestamp, cfg, duration));
  }
  for (const auto& a : gts.items) {
    gw.push_back(anchor_window(a.timestamp, cfg, duration));
  }

  std::vector<MatchedPair> candidates;
  for (std::size_t p = 0; p < pw.size(); ++p) {
    for (std::size_t g = 0; g < gw.size(); ++g) {
      const double iou = interval_iou(pw[p], gw[g]);
      if (iou > 0.0) {
        candidates.push_back({p, g, iou});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [&](const MatchedPair& x, const MatchedPair& y) {
    return std::make_tuple(-x.iou, preds.items[x.pred].timestamp, gts.items[x.gt].timestamp, x.pred, x.gt) <
           std::make_tuple(-y.iou, preds.items[y.pred].timestamp, gts.items[y.gt].timestamp, y.pred, y.gt);
  });

  EvalReport report;
  report.num_preds = pw.size();
  report.num_gts = gw.size();
  report.thresholds = cfg.thresholds;
  report.f1_threshold = cfg.f1_threshold;

  std::vector<bool> pred_used(pw.size(), false), gt_used(gw.size(), false);
  for (const auto& c : candidates) {
    if (!pred_used[c.pred] && !gt_used[c.gt]) {
      pred_used[c.pred] = true;
      gt_used[c.gt] = true;
      report.matches.push_back(c);
    }
  }

  auto rates_at = [&](double th) {
    const auto hits = static_cast<double>(std::count_if(
        report.matches.begin(), report.matches.end(), [&](const MatchedPair& m) { return m.iou >= th; }));
    const double p = pw.empty() ? 0.0 : hits / static_cast<double>(pw.size());
    const double r = gw.empty() ? 0.0 : hits / static_cast<double>(gw.size());
    return std::pair{p, r};
  };
  for (double th : cfg.thresholds) {
    const auto [p, r] = rates_at(th);
    report.precision.push_back(p);
    report.recall.push_back(r);
  }
  const auto [p, r] = rates_at(cfg.f1_threshold);
  report.f1 = (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  return report;
}

}  // namespace mofa
