#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace radex::tabular {

/// Named samples x features table. Values are finite by construction;
/// column names are unique. Labels, when present, are 0 (benign) or
/// 1 (malignant).
class FeatureMatrix {
 public:
  FeatureMatrix() = default;

  /// Validates invariants; throws BadFormat / LengthMismatch.
  static FeatureMatrix create(std::vector<std::string> sample_ids,
                              std::vector<std::string> columns,
                              std::vector<double> values,
                              std::optional<std::vector<int>> labels = {});

  std::size_t n_samples() const { return sample_ids_.size(); }
  std::size_t n_features() const { return columns_.size(); }

  const std::vector<std::string>& sample_ids() const { return sample_ids_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::optional<std::vector<int>>& labels() const { return labels_; }
  const std::vector<double>& values() const { return values_; }

  double at(std::size_t sample, std::size_t feature) const {
    return values_[sample * columns_.size() + feature];
  }
  std::span<const double> row(std::size_t sample) const {
    return {values_.data() + sample * columns_.size(), columns_.size()};
  }
  std::vector<double> column(std::size_t feature) const;

  /// Index of a named column; throws MissingFeature.
  std::size_t column_index(const std::string& name) const;

  FeatureMatrix select_columns(std::span<const std::size_t> indices) const;
  FeatureMatrix select_columns(const std::vector<std::string>& names) const;
  FeatureMatrix select_rows(std::span<const std::size_t> indices) const;

  /// Requires labels; throws BadFormat otherwise.
  const std::vector<int>& require_labels() const;

 private:
  std::vector<std::string> sample_ids_;
  std::vector<std::string> columns_;
  std::vector<double> values_;  // n_samples x n_features, row-major
  std::optional<std::vector<int>> labels_;
};

/// CSV dialect: header row; first column sample_id, optional second column
/// "label" (0/1 or benign/malignant), remaining columns features. UTF-8,
/// '.' decimal separator.
FeatureMatrix read_feature_csv(const std::filesystem::path& path);
void write_feature_csv(const std::filesystem::path& path,
                       const FeatureMatrix& m);

}  // namespace radex::tabular
