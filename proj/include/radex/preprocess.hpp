#pragma once

#include <string>
#include <utility>
#include <vector>

#include "radex/feature_matrix.hpp"

namespace radex::tabular {

struct NzvResult {
  FeatureMatrix filtered;
  std::vector<std::string> dropped;
};

/// Near-zero-variance filter. The test min-max scales each column to [0,1]
/// and drops it when the scaled population variance falls below the cutoff;
/// exactly-constant columns are always dropped. Surviving columns keep
/// their original values and order. Throws AllColumnsRemoved when nothing
/// survives.
NzvResult near_zero_variance_filter(const FeatureMatrix& m, double cutoff);

struct PruneResult {
  FeatureMatrix pruned;
  /// (dropped column, the kept column it correlated with)
  std::vector<std::pair<std::string, std::string>> dropped;
};

/// Greedy correlation pruning. While any pair has |spearman| > threshold:
/// take the pair with the largest |rho| (ties by column order) and drop the
/// member with the larger mean |rho| against all remaining columns (ties
/// drop the later column). Undefined correlations count as 0.
PruneResult correlation_prune(const FeatureMatrix& m, double threshold,
                              int jobs = 1);

}  // namespace radex::tabular
