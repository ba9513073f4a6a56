#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radex/feature_matrix.hpp"
#include "radex/features.hpp"

namespace radex::xai {

/// Spearman correlations between a radiomic matrix (a columns) and a deep
/// matrix (b columns). Undefined entries (a constant column on either side)
/// are stored as NaN and are excluded from every count downstream.
struct CorrelationMatrix {
  std::size_t a = 0, b = 0;
  std::size_t n_samples = 0;
  std::vector<double> rho;  // a x b, NaN = undefined
  std::vector<std::string> radiomic_names;
  std::vector<std::string> deep_names;

  double at(std::size_t i, std::size_t j) const { return rho[i * b + j]; }
  bool defined(std::size_t i, std::size_t j) const;
  std::size_t undefined_count() const;
};

/// Samples must carry identical ids in identical order; mismatches are an
/// error, never a silent reorder. Throws SampleMismatch, TooFewSamples
/// (n < 3). The OpenMP kernel; any jobs value gives identical results.
CorrelationMatrix correlation_matrix(const tabular::FeatureMatrix& radiomic,
                                     const tabular::FeatureMatrix& deep,
                                     int jobs = 0);

/// Serial reference implementation, kept for parallel-equality tests and
/// the benchmark target.
CorrelationMatrix correlation_matrix_serial(
    const tabular::FeatureMatrix& radiomic,
    const tabular::FeatureMatrix& deep);

enum class ThresholdMode { Signed, Absolute };

const char* to_string(ThresholdMode mode);
ThresholdMode threshold_mode_from_string(const std::string& s);

/// The four default report thresholds.
inline constexpr std::array<double, 4> kDefaultThresholds{0.30, 0.35, 0.40,
                                                          0.45};

/// counts[i][t] = number of deep features whose correlation with radiomic
/// feature i passes thresholds[t]. Signed mode tests rho >= M (the default),
/// absolute mode tests |rho| >= M. Undefined entries never count.
struct ThresholdReport {
  std::vector<double> thresholds;
  ThresholdMode mode = ThresholdMode::Signed;
  std::vector<std::string> names;  // radiomic feature names, matrix order
  std::vector<std::vector<std::size_t>> counts;
};

ThresholdReport threshold_counts(
    const CorrelationMatrix& cm,
    std::span<const double> thresholds = kDefaultThresholds,
    ThresholdMode mode = ThresholdMode::Signed);

/// Per-feature counts summed over the five filter sources of each base
/// feature. Groups are ordered by descending count at the smallest
/// threshold, ties alphabetical; zero-count groups are kept.
struct GroupedReport {
  struct Group {
    std::string base;  // category-qualified base name
    std::vector<std::size_t> counts;
  };
  std::vector<double> thresholds;
  std::vector<Group> groups;
};

/// descriptors[i] must describe names[i] of the threshold report.
GroupedReport group_by_base(
    const ThresholdReport& tr,
    const std::vector<radiomics::FeatureDescriptor>& descriptors);

/// Convenience overload: descriptors parsed from the report's names.
GroupedReport group_by_base(const ThresholdReport& tr);

/// Total passing pairs at each grid point; the grid must be strictly
/// increasing. The result is non-increasing.
std::vector<std::size_t> correlation_trend(
    const CorrelationMatrix& cm, std::span<const double> grid,
    ThresholdMode mode = ThresholdMode::Signed);

/// Default trend grid: 0.00, 0.01, ..., 1.00.
std::vector<double> default_trend_grid();

/// Assembled explanation report (the JSON/CSV external interface).
struct ExplainReport {
  ThresholdReport per_feature;
  GroupedReport grouped;
  std::vector<double> trend_grid;
  std::vector<std::size_t> trend_totals;
  std::size_t n_samples = 0;
  std::size_t undefined_pairs = 0;
  std::vector<std::string> constant_radiomic;
  std::vector<std::string> constant_deep;
  std::string deep_provenance;

  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
};

ExplainReport build_explain_report(const CorrelationMatrix& cm,
                                   std::span<const double> thresholds,
                                   ThresholdMode mode,
                                   const std::string& deep_provenance = {});

}  // namespace radex::xai
