#pragma once

#include "mofa/geometry.hpp"

#include <cstddef>
#include <vector>

namespace mofa {

/// Per-cluster frame budgets at each allocation stage.
struct Allocation {
  std::vector<std::size_t> r_origin;  ///< size-proportional share, floor(N_p |B_k| / N_o)
  std::vector<std::size_t> r_raw;     ///< motion-boosted and clamped to [1, |B_k|]
  std::vector<std::size_t> r_final;   ///< rescaled so the budgets sum to N_p
};

/// Within-cluster variances normalized by the largest one. All zeros when
/// every cluster has zero variance.
std::vector<double> motion_scores(const FeatureSequence& seq, const Partition& partition);

/// Same, from precomputed variances.
std::vector<double> motion_scores_from_variances(const std::vector<double>& variances);

/// floor(N_p |B_k| / N_o) per cluster.
std::vector<std::size_t> origin_budgets(const std::vector<std::size_t>& sizes, std::size_t n_p);

/// R_k = max(1, min(floor(R_origin (1 + s_k)), |B_k|)).
/// Throws std::invalid_argument unless U <= n_p <= sum(sizes) and every score is in [0, 1].
std::vector<std::size_t> raw_budgets(const std::vector<std::size_t>& sizes,
                                     const std::vector<double>& scores, std::size_t n_p);

/// Rescales r_raw to sum exactly to n_p with 1 <= R~_k <= sizes[k]:
/// largest-remainder apportionment, clamp, then unit-by-unit repair.
std::vector<std::size_t> scale_budgets(const std::vector<std::size_t>& r_raw,
                                       const std::vector<std::size_t>& sizes, std::size_t n_p);

/// Runs the three stages above.
Allocation allocate(const std::vector<std::size_t>& sizes, const std::vector<double>& scores,
                    std::size_t n_p);

}  // namespace mofa
