#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radex/cross_validation.hpp"
#include "radex/forest.hpp"
#include "radex/stats.hpp"

namespace radex::learn {

struct SfsParams {
  int k_max = 10;
  int patience = 2;
  ForestParams rf;
};

/// Classification wrapper for the selection loop: train on the labeled
/// train matrix, return positive-class scores for the test matrix. The
/// seed is derived per (step, candidate, repeat, fold); implementations
/// must be deterministic in it. The forest wrapper is the built-in;
/// alternative classifiers slot in behind this signature.
using ClassifierWrapper = std::function<std::vector<double>(
    const tabular::FeatureMatrix& train, const tabular::FeatureMatrix& test,
    std::uint64_t seed)>;

/// Random-forest wrapper with the given estimator count (the per-unit seed
/// overrides params.seed).
ClassifierWrapper forest_wrapper(const ForestParams& params);

struct SelectionReport {
  std::vector<std::string> chosen;        // ordered, duplicate-free
  std::vector<double> cv_accuracy_path;   // accuracy after each addition
  tabular::CvScheme scheme;
  std::uint64_t seed = 0;

  nlohmann::ordered_json to_json() const;
};

/// Sequential forward selection. Each step adds the feature maximizing the
/// wrapper's mean CV accuracy (ties by column order) and stops at k_max or
/// once the best accuracy has not improved for `patience` consecutive
/// steps; the report is truncated at the best prefix.
SelectionReport sfs_select(const tabular::FeatureMatrix& m,
                           const ClassifierWrapper& wrapper,
                           std::uint64_t seed, int k_max, int patience,
                           const tabular::CvScheme& scheme, int jobs = 1);

/// Convenience overload with the built-in random-forest wrapper.
SelectionReport sfs_select(const tabular::FeatureMatrix& m,
                           const SfsParams& params,
                           const tabular::CvScheme& scheme, int jobs = 1);

/// Per-metric mean and sample standard deviation over all CV folds.
struct CvMetrics {
  double accuracy_mean = 0, accuracy_stdev = 0;
  double auroc_mean = 0, auroc_stdev = 0;
  double sensitivity_mean = 0, sensitivity_stdev = 0;
  double specificity_mean = 0, specificity_stdev = 0;
  double ppv_mean = 0, ppv_stdev = 0;
  double npv_mean = 0, npv_stdev = 0;
  std::size_t n_folds = 0;

  nlohmann::ordered_json to_json() const;
};

struct CvSelection {
  ForestModel best;
  int best_repeat = 0;
  int best_fold = 0;
  double best_fold_accuracy = 0.0;
  CvMetrics pooled;
};

/// Trains one forest per (repeat, fold) on the training split and returns
/// the model with the highest held-out-fold accuracy (ties by earliest
/// repeat, then fold) together with pooled CV metrics. Each unit derives
/// its seed from (params.seed, repeat, fold), so results are identical for
/// any jobs value.
CvSelection cv_select_best(const tabular::FeatureMatrix& m,
                           const tabular::CvScheme& scheme,
                           const ForestParams& params, int jobs = 1);

}  // namespace radex::learn
