#include "radex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "radex/error.hpp"

namespace radex::tabular {

std::vector<double> fractional_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });

  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share the average 1-based rank
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

RankedColumn RankedColumn::from_values(std::span<const double> values) {
  RankedColumn rc;
  rc.centered = fractional_ranks(values);
  const double mean =
      std::accumulate(rc.centered.begin(), rc.centered.end(), 0.0) /
      static_cast<double>(rc.centered.size());
  double sq = 0.0;
  for (double& v : rc.centered) {
    v -= mean;
    sq += v * v;
  }
  rc.norm_sq = sq;
  return rc;
}

std::optional<double> spearman_ranked(const RankedColumn& x,
                                      const RankedColumn& y) {
  if (x.centered.size() != y.centered.size())
    fail(ErrorKind::LengthMismatch, "rank vectors differ in length");
  if (x.norm_sq == 0.0 || y.norm_sq == 0.0) return std::nullopt;
  double dot = 0.0;
  for (std::size_t i = 0; i < x.centered.size(); ++i)
    dot += x.centered[i] * y.centered[i];
  // centered ranks are exact multiples of 0.5, so norm_sq products of
  // moderate n stay exactly representable and identical rank vectors give
  // exactly +/-1 here
  const double rho = dot / std::sqrt(x.norm_sq * y.norm_sq);
  return std::clamp(rho, -1.0, 1.0);
}

std::optional<double> spearman(std::span<const double> x,
                               std::span<const double> y) {
  if (x.size() != y.size())
    fail(ErrorKind::LengthMismatch, "sequences differ in length");
  if (x.size() < 2) fail(ErrorKind::TooFewSamples, "spearman needs n >= 2");
  return spearman_ranked(RankedColumn::from_values(x),
                         RankedColumn::from_values(y));
}

std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y) {
  if (x.size() != y.size())
    fail(ErrorKind::LengthMismatch, "sequences differ in length");
  if (x.size() < 2) fail(ErrorKind::TooFewSamples, "pearson needs n >= 2");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double auroc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size())
    fail(ErrorKind::LengthMismatch, "scores and labels differ in length");
  std::size_t n_pos = 0, n_neg = 0;
  for (int l : labels) (l == 1 ? n_pos : n_neg) += 1;
  if (n_pos == 0 || n_neg == 0)
    fail(ErrorKind::SingleClass, "AUROC needs both classes present");

  const auto ranks = fractional_ranks(scores);
  double rank_sum_pos = 0.0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == 1) rank_sum_pos += ranks[i];
  const double np = static_cast<double>(n_pos);
  // Mann-Whitney U; average ranks give tied pairs weight 0.5 exactly
  const double u = rank_sum_pos - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

MetricsReport evaluate(std::span<const double> scores,
                       std::span<const int> labels) {
  if (scores.size() != labels.size())
    fail(ErrorKind::LengthMismatch, "scores and labels differ in length");
  if (scores.empty()) fail(ErrorKind::TooFewSamples, "no samples to evaluate");

  MetricsReport r;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted_pos = scores[i] >= 0.5;
    if (labels[i] == 1)
      predicted_pos ? ++r.tp : ++r.fn;
    else
      predicted_pos ? ++r.fp : ++r.tn;
  }
  const auto ratio = [](std::size_t num, std::size_t den) {
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
  };
  r.accuracy = ratio(r.tp + r.tn, r.tp + r.tn + r.fp + r.fn);
  r.sensitivity = ratio(r.tp, r.tp + r.fn);
  r.specificity = ratio(r.tn, r.tn + r.fp);
  r.ppv = ratio(r.tp, r.tp + r.fp);
  r.npv = ratio(r.tn, r.tn + r.fn);
  r.auroc = auroc(scores, labels);
  return r;
}

}  // namespace radex::tabular
