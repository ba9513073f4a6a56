#include "radex/forest.hpp"

#include <algorithm>
#include <cmath>

#include "radex/error.hpp"
#include "radex/parallel.hpp"
#include "radex/rng.hpp"

namespace radex::learn {

namespace {

struct Split {
  int column = -1;
  double threshold = 0.0;
  double decrease = 0.0;
};

double gini(const std::array<std::int64_t, 2>& counts) {
  const double n = static_cast<double>(counts[0] + counts[1]);
  if (n == 0.0) return 0.0;
  const double f0 = counts[0] / n, f1 = counts[1] / n;
  return 1.0 - f0 * f0 - f1 * f1;
}

class TreeBuilder {
 public:
  TreeBuilder(const tabular::FeatureMatrix& m, const std::vector<int>& labels,
              std::uint64_t seed)
      : m_(m), labels_(labels), rng_(seed) {}

  Tree build() {
    // bootstrap: n draws with replacement
    const std::size_t n = m_.n_samples();
    std::vector<std::size_t> samples(n);
    for (std::size_t i = 0; i < n; ++i)
      samples[i] = static_cast<std::size_t>(rng_.below(n));

    Tree tree;
    grow(tree, std::move(samples));
    return tree;
  }

 private:
  // Builds the node for `samples`, appends it, returns its index. Children
  // are grown depth-first, left before right, so RNG consumption is
  // schedule-independent.
  int grow(Tree& tree, std::vector<std::size_t> samples) {
    std::array<std::int64_t, 2> counts{0, 0};
    for (std::size_t s : samples) ++counts[labels_[s]];

    const int index = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{});
    tree.nodes[index].counts = counts;

    const bool pure = counts[0] == 0 || counts[1] == 0;
    if (samples.size() < 2 || pure) return index;

    const Split split = best_split(samples, counts);
    if (split.column < 0) return index;  // no impurity-reducing candidate

    std::vector<std::size_t> left, right;
    for (std::size_t s : samples)
      (m_.at(s, split.column) <= split.threshold ? left : right).push_back(s);
    samples.clear();
    samples.shrink_to_fit();

    tree.nodes[index].column = split.column;
    tree.nodes[index].threshold = split.threshold;
    const int l = grow(tree, std::move(left));
    tree.nodes[index].left = l;
    const int r = grow(tree, std::move(right));
    tree.nodes[index].right = r;
    return index;
  }

  Split best_split(const std::vector<std::size_t>& samples,
                   const std::array<std::int64_t, 2>& counts) {
    const std::size_t p = m_.n_features();
    const std::size_t mtry = static_cast<std::size_t>(
        std::ceil(std::sqrt(static_cast<double>(p))));

    // sample mtry distinct columns; candidates are evaluated in ascending
    // column order so tie-breaking is by lowest column index
    std::vector<std::size_t> cols(p);
    for (std::size_t i = 0; i < p; ++i) cols[i] = i;
    for (std::size_t i = 0; i < mtry && i < p; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng_.below(p - i));
      std::swap(cols[i], cols[j]);
    }
    cols.resize(std::min(mtry, p));
    std::sort(cols.begin(), cols.end());

    const double parent_gini = gini(counts);
    const double n = static_cast<double>(samples.size());

    Split best;
    std::vector<std::pair<double, int>> values;  // (value, label)
    for (std::size_t col : cols) {
      values.clear();
      for (std::size_t s : samples)
        values.emplace_back(m_.at(s, col), labels_[s]);
      std::sort(values.begin(), values.end());

      std::array<std::int64_t, 2> left{0, 0};
      for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        ++left[values[i].second];
        if (values[i].first == values[i + 1].first) continue;
        const std::array<std::int64_t, 2> right{counts[0] - left[0],
                                                counts[1] - left[1]};
        const double nl = static_cast<double>(left[0] + left[1]);
        const double nr = n - nl;
        const double decrease =
            parent_gini - (nl / n) * gini(left) - (nr / n) * gini(right);
        if (decrease > best.decrease) {
          double threshold = (values[i].first + values[i + 1].first) / 2.0;
          // adjacent doubles can round the midpoint up to the right value,
          // which would leave the right side empty
          if (!(threshold < values[i + 1].first)) threshold = values[i].first;
          best.decrease = decrease;
          best.column = static_cast<int>(col);
          best.threshold = threshold;
        }
        // ties keep the earlier (lower column, lower threshold) candidate
      }
    }
    return best;
  }

  const tabular::FeatureMatrix& m_;
  const std::vector<int>& labels_;
  Rng rng_;
};

void require_both_classes(const std::vector<int>& labels) {
  bool has0 = false, has1 = false;
  for (int l : labels) (l == 1 ? has1 : has0) = true;
  if (!has0 || !has1)
    fail(ErrorKind::SingleClass, "training data must contain both classes");
}

}  // namespace

ForestModel rf_train(const tabular::FeatureMatrix& m,
                     const ForestParams& params, int jobs) {
  const auto& labels = m.require_labels();
  require_both_classes(labels);
  if (params.n_estimators < 1)
    fail(ErrorKind::BadArgument, "n_estimators must be >= 1");

  ForestModel model;
  model.n_estimators = params.n_estimators;
  model.seed = params.seed;
  model.feature_names = m.columns();
  model.trees.resize(params.n_estimators);

  parallel_for(static_cast<std::size_t>(params.n_estimators), jobs,
               [&](std::size_t t) {
                 TreeBuilder builder(
                     m, labels,
                     mix_seed(params.seed, {0x74726565ULL /*'tree'*/, t}));
                 model.trees[t] = builder.build();
               });
  return model;
}

ForestModel rf_train_serial(const tabular::FeatureMatrix& m,
                            const ForestParams& params) {
  return rf_train(m, params, /*jobs=*/1);
}

std::vector<double> rf_predict_proba(const ForestModel& model,
                                     const tabular::FeatureMatrix& m) {
  std::vector<std::size_t> col_map(model.feature_names.size());
  for (std::size_t f = 0; f < model.feature_names.size(); ++f)
    col_map[f] = m.column_index(model.feature_names[f]);

  std::vector<double> proba(m.n_samples(), 0.0);
  for (std::size_t s = 0; s < m.n_samples(); ++s) {
    double sum = 0.0;
    for (const Tree& tree : model.trees) {
      int node = 0;
      while (!tree.nodes[node].is_leaf()) {
        const TreeNode& nd = tree.nodes[node];
        const double v = m.at(s, col_map[nd.column]);
        node = v <= nd.threshold ? nd.left : nd.right;
      }
      const auto& counts = tree.nodes[node].counts;
      sum += static_cast<double>(counts[1]) /
             static_cast<double>(counts[0] + counts[1]);
    }
    proba[s] = sum / static_cast<double>(model.trees.size());
  }
  return proba;
}

nlohmann::ordered_json ForestModel::to_json() const {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "random_forest";
  doc["n_estimators"] = n_estimators;
  doc["seed"] = seed;
  doc["feature_names"] = feature_names;
  auto& trees_json = doc["trees"] = nlohmann::ordered_json::array();
  for (const Tree& tree : trees) {
    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const TreeNode& n : tree.nodes) {
      nlohmann::ordered_json node;
      if (n.is_leaf()) {
        node["counts"] = {n.counts[0], n.counts[1]};
      } else {
        node["column"] = n.column;
        node["threshold"] = n.threshold;
        node["left"] = n.left;
        node["right"] = n.right;
        node["counts"] = {n.counts[0], n.counts[1]};
      }
      nodes.push_back(std::move(node));
    }
    trees_json.push_back({{"nodes", std::move(nodes)}});
  }
  return doc;
}

ForestModel ForestModel::from_json(const nlohmann::json& doc) {
  try {
    if (doc.at("schema_version").get<int>() != 1 ||
        doc.at("kind").get<std::string>() != "random_forest")
      fail(ErrorKind::BadFormat, "unsupported model document");
    ForestModel model;
    model.n_estimators = doc.at("n_estimators").get<int>();
    model.seed = doc.at("seed").get<std::uint64_t>();
    model.feature_names =
        doc.at("feature_names").get<std::vector<std::string>>();
    for (const auto& tree_json : doc.at("trees")) {
      Tree tree;
      for (const auto& node_json : tree_json.at("nodes")) {
        TreeNode n;
        const auto counts = node_json.at("counts");
        n.counts = {counts.at(0).get<std::int64_t>(),
                    counts.at(1).get<std::int64_t>()};
        if (node_json.contains("column")) {
          n.column = node_json.at("column").get<int>();
          n.threshold = node_json.at("threshold").get<double>();
          n.left = node_json.at("left").get<int>();
          n.right = node_json.at("right").get<int>();
        }
        tree.nodes.push_back(n);
      }
      if (tree.nodes.empty())
        fail(ErrorKind::BadFormat, "tree without nodes");
      model.trees.push_back(std::move(tree));
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::BadFormat, std::string("malformed model JSON: ") +
                                   e.what());
  }
}

}  // namespace radex::learn
