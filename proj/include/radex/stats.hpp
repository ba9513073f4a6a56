#pragma once

#include <optional>
#include <span>
#include <vector>

namespace radex::tabular {

/// Fractional ranks (1-based), ties receive the average of their positions.
std::vector<double> fractional_ranks(std::span<const double> values);

/// A rank vector centered on its mean, with its squared Euclidean norm; the
/// shared kernel behind every Spearman computation in the toolkit.
struct RankedColumn {
  std::vector<double> centered;
  double norm_sq = 0.0;

  static RankedColumn from_values(std::span<const double> values);
};

/// Pearson correlation of two pre-ranked columns; nullopt when either rank
/// vector is constant (zero rank variance).
std::optional<double> spearman_ranked(const RankedColumn& x,
                                      const RankedColumn& y);

/// Spearman rank correlation: Pearson over fractional ranks with average
/// ties. Throws LengthMismatch / TooFewSamples (n < 2); returns nullopt for
/// constant inputs.
std::optional<double> spearman(std::span<const double> x,
                               std::span<const double> y);

/// Pearson correlation; nullopt when either input is constant.
std::optional<double> pearson(std::span<const double> x,
                              std::span<const double> y);

/// Binary-classification summary at the fixed 0.5 score threshold.
struct MetricsReport {
  double accuracy = 0.0;
  double auroc = 0.0;
  double sensitivity = 0.0;
  double specificity = 0.0;
  double ppv = 0.0;
  double npv = 0.0;
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;
};

/// AUROC via the rank statistic (average ranks make ties count 0.5, exactly
/// matching pairwise counting). Throws SingleClass if only one label occurs.
double auroc(std::span<const double> scores, std::span<const int> labels);

/// Confusion counts at threshold 0.5 (score >= 0.5 is positive) plus AUROC.
/// Ratio metrics with an empty denominator are reported as 0.
MetricsReport evaluate(std::span<const double> scores,
                       std::span<const int> labels);

}  // namespace radex::tabular
