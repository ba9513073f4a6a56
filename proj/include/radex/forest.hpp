#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radex/feature_matrix.hpp"

namespace radex::learn {

/// Binary decision tree node. column < 0 marks a leaf; leaves carry the
/// class counts of the training samples they received.
struct TreeNode {
  int column = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  std::array<std::int64_t, 2> counts{0, 0};

  bool is_leaf() const { return column < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct ForestParams {
  int n_estimators = 100;
  std::uint64_t seed = 0;
};

struct ForestModel {
  std::vector<Tree> trees;
  int n_estimators = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> feature_names;

  nlohmann::ordered_json to_json() const;
  static ForestModel from_json(const nlohmann::json& doc);
};

/// Random-forest training. Per tree: a seeded bootstrap of n samples, then
/// greedy Gini splits over a random subset of ceil(sqrt(p)) columns per
/// node, candidate thresholds at midpoints between consecutive sorted
/// unique values, ties broken by lowest column index then lowest threshold.
/// Nodes with fewer than 2 samples, pure nodes, and nodes with no impurity-
/// reducing candidate become leaves. Each tree draws from its own seed
/// derived from (params.seed, tree index), so any jobs value produces the
/// identical model. Throws SingleClass.
ForestModel rf_train(const tabular::FeatureMatrix& m,
                     const ForestParams& params, int jobs = 1);

/// Serial reference path of rf_train (kept for parallel-equality tests and
/// the benchmark target).
ForestModel rf_train_serial(const tabular::FeatureMatrix& m,
                            const ForestParams& params);

/// Positive-class probability: mean over trees of the reached leaf's
/// positive-class fraction. Columns are matched by name; throws
/// MissingFeature.
std::vector<double> rf_predict_proba(const ForestModel& model,
                                     const tabular::FeatureMatrix& m);

}  // namespace radex::learn
