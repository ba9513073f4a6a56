#include "radex/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radex/error.hpp"
#include "radex/parallel.hpp"
#include "radex/rng.hpp"

namespace radex::learn {

namespace {

struct FoldSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

FoldSplit split_for(const std::vector<int>& fold_of, int fold) {
  FoldSplit s;
  for (std::size_t i = 0; i < fold_of.size(); ++i)
    (fold_of[i] == fold ? s.test : s.train).push_back(i);
  return s;
}

double fold_accuracy(const std::vector<double>& scores,
                     const std::vector<int>& labels) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < scores.size(); ++i)
    correct += (scores[i] >= 0.5 ? 1 : 0) == labels[i];
  return static_cast<double>(correct) / static_cast<double>(scores.size());
}

void require_both_classes(const std::vector<int>& labels) {
  bool has0 = false, has1 = false;
  for (int l : labels) (l == 1 ? has1 : has0) = true;
  if (!has0 || !has1)
    fail(ErrorKind::SingleClass, "training data must contain both classes");
}

std::pair<double, double> mean_stdev(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / static_cast<double>(xs.size() - 1))};
}

}  // namespace

ClassifierWrapper forest_wrapper(const ForestParams& params) {
  return [params](const tabular::FeatureMatrix& train,
                  const tabular::FeatureMatrix& test, std::uint64_t seed) {
    ForestParams p = params;
    p.seed = seed;
    return rf_predict_proba(rf_train(train, p, /*jobs=*/1), test);
  };
}

SelectionReport sfs_select(const tabular::FeatureMatrix& m,
                           const ClassifierWrapper& wrapper,
                           std::uint64_t seed, int k_max, int patience,
                           const tabular::CvScheme& scheme, int jobs) {
  if (k_max < 1) fail(ErrorKind::BadArgument, "k_max must be >= 1");
  if (patience < 1) fail(ErrorKind::BadArgument, "patience must be >= 1");
  const auto& labels = m.require_labels();
  require_both_classes(labels);
  const auto folds = tabular::stratified_folds(labels, scheme);
  const std::size_t p = m.n_features();
  const std::size_t n_units = folds.size() * scheme.k;

  std::vector<std::size_t> chosen_idx;
  std::vector<double> path;
  std::vector<std::uint8_t> in_set(p, 0);

  // mean CV accuracy of the wrapper on the chosen set + candidate
  auto candidate_accuracy = [&](std::size_t step, std::size_t candidate) {
    std::vector<std::size_t> cols = chosen_idx;
    cols.push_back(candidate);
    std::sort(cols.begin(), cols.end());
    const auto sub = m.select_columns(cols);
    double total = 0.0;
    for (std::size_t rep = 0; rep < folds.size(); ++rep) {
      for (int fold = 0; fold < scheme.k; ++fold) {
        const auto split = split_for(folds[rep], fold);
        const auto train = sub.select_rows(split.train);
        const auto test = sub.select_rows(split.test);
        const auto unit_seed =
            mix_seed(seed, {0x736673ULL /*'sfs'*/, step, candidate, rep,
                            static_cast<std::uint64_t>(fold)});
        total += fold_accuracy(wrapper(train, test, unit_seed),
                               test.require_labels());
      }
    }
    return total / static_cast<double>(n_units);
  };

  double best_acc = -1.0;
  std::size_t best_prefix = 0;
  while (chosen_idx.size() < static_cast<std::size_t>(k_max)) {
    std::vector<std::size_t> candidates;
    for (std::size_t f = 0; f < p; ++f)
      if (!in_set[f]) candidates.push_back(f);
    if (candidates.empty()) break;

    std::vector<double> acc(candidates.size());
    const std::size_t step = chosen_idx.size();
    parallel_for(candidates.size(), jobs, [&](std::size_t i) {
      acc[i] = candidate_accuracy(step, candidates[i]);
    });

    std::size_t winner = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
      if (acc[i] > acc[winner]) winner = i;  // ties keep the earlier column

    in_set[candidates[winner]] = 1;
    chosen_idx.push_back(candidates[winner]);
    path.push_back(acc[winner]);

    if (path.back() > best_acc) {
      best_acc = path.back();
      best_prefix = path.size();
    } else if (path.size() - best_prefix >=
               static_cast<std::size_t>(patience)) {
      break;
    }
  }

  chosen_idx.resize(best_prefix);
  path.resize(best_prefix);

  SelectionReport report;
  for (std::size_t f : chosen_idx) report.chosen.push_back(m.columns()[f]);
  report.cv_accuracy_path = std::move(path);
  report.scheme = scheme;
  report.seed = seed;
  return report;
}

SelectionReport sfs_select(const tabular::FeatureMatrix& m,
                           const SfsParams& params,
                           const tabular::CvScheme& scheme, int jobs) {
  return sfs_select(m, forest_wrapper(params.rf), params.rf.seed,
                    params.k_max, params.patience, scheme, jobs);
}

nlohmann::ordered_json SelectionReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "sfs_selection";
  doc["chosen"] = chosen;
  doc["cv_accuracy_path"] = cv_accuracy_path;
  doc["scheme"] = {{"k", scheme.k},
                   {"repeats", scheme.repeats},
                   {"seed", scheme.seed},
                   {"stratified", scheme.stratified}};
  doc["seed"] = seed;
  return doc;
}

nlohmann::ordered_json CvMetrics::to_json() const {
  nlohmann::ordered_json doc;
  auto entry = [](double mean, double stdev) {
    return nlohmann::ordered_json{{"mean", mean}, {"stdev", stdev}};
  };
  doc["accuracy"] = entry(accuracy_mean, accuracy_stdev);
  doc["auroc"] = entry(auroc_mean, auroc_stdev);
  doc["sensitivity"] = entry(sensitivity_mean, sensitivity_stdev);
  doc["specificity"] = entry(specificity_mean, specificity_stdev);
  doc["ppv"] = entry(ppv_mean, ppv_stdev);
  doc["npv"] = entry(npv_mean, npv_stdev);
  doc["n_folds"] = n_folds;
  return doc;
}

CvSelection cv_select_best(const tabular::FeatureMatrix& m,
                           const tabular::CvScheme& scheme,
                           const ForestParams& params, int jobs) {
  const auto& labels = m.require_labels();
  require_both_classes(labels);
  const auto folds = tabular::stratified_folds(labels, scheme);
  const std::size_t n_units = folds.size() * scheme.k;

  struct UnitResult {
    ForestModel model;
    tabular::MetricsReport metrics;
  };
  std::vector<UnitResult> units(n_units);

  parallel_for(n_units, jobs, [&](std::size_t u) {
    const std::size_t rep = u / scheme.k;
    const int fold = static_cast<int>(u % scheme.k);
    const auto split = split_for(folds[rep], fold);
    const auto train = m.select_rows(split.train);
    const auto test = m.select_rows(split.test);
    ForestParams rf = params;
    rf.seed = mix_seed(params.seed,
                       {0x6376ULL /*'cv'*/, rep,
                        static_cast<std::uint64_t>(fold)});
    units[u].model = rf_train(train, rf, /*jobs=*/1);
    const auto scores = rf_predict_proba(units[u].model, test);
    units[u].metrics =
        tabular::evaluate(scores, test.require_labels());
  });

  std::size_t best = 0;
  for (std::size_t u = 1; u < n_units; ++u)
    if (units[u].metrics.accuracy > units[best].metrics.accuracy) best = u;

  std::vector<double> acc, auc, sens, spec, ppv, npv;
  for (const auto& u : units) {
    acc.push_back(u.metrics.accuracy);
    auc.push_back(u.metrics.auroc);
    sens.push_back(u.metrics.sensitivity);
    spec.push_back(u.metrics.specificity);
    ppv.push_back(u.metrics.ppv);
    npv.push_back(u.metrics.npv);
  }

  CvSelection sel;
  sel.best = std::move(units[best].model);
  sel.best_repeat = static_cast<int>(best / scheme.k);
  sel.best_fold = static_cast<int>(best % scheme.k);
  sel.best_fold_accuracy = units[best].metrics.accuracy;
  std::tie(sel.pooled.accuracy_mean, sel.pooled.accuracy_stdev) =
      mean_stdev(acc);
  std::tie(sel.pooled.auroc_mean, sel.pooled.auroc_stdev) = mean_stdev(auc);
  std::tie(sel.pooled.sensitivity_mean, sel.pooled.sensitivity_stdev) =
      mean_stdev(sens);
  std::tie(sel.pooled.specificity_mean, sel.pooled.specificity_stdev) =
      mean_stdev(spec);
  std::tie(sel.pooled.ppv_mean, sel.pooled.ppv_stdev) = mean_stdev(ppv);
  std::tie(sel.pooled.npv_mean, sel.pooled.npv_stdev) = mean_stdev(npv);
  sel.pooled.n_folds = n_units;
  return sel;
}

}  // namespace radex::learn
