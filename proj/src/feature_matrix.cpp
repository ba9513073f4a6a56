#include "radex/feature_matrix.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

#include "radex/csv.hpp"
#include "radex/error.hpp"

namespace radex::tabular {

FeatureMatrix FeatureMatrix::create(std::vector<std::string> sample_ids,
                                    std::vector<std::string> columns,
                                    std::vector<double> values,
                                    std::optional<std::vector<int>> labels) {
  if (values.size() != sample_ids.size() * columns.size())
    fail(ErrorKind::LengthMismatch,
         "value buffer does not match sample/column counts");
  for (double v : values)
    if (!std::isfinite(v))
      fail(ErrorKind::BadFormat, "feature matrix admits no NaN/inf values");
  std::unordered_set<std::string> seen;
  for (const auto& c : columns)
    if (!seen.insert(c).second)
      fail(ErrorKind::BadFormat, "duplicate column name '" + c + "'");
  if (labels) {
    if (labels->size() != sample_ids.size())
      fail(ErrorKind::LengthMismatch, "labels length != sample count");
    for (int l : *labels)
      if (l != 0 && l != 1)
        fail(ErrorKind::BadFormat, "labels must be 0 or 1");
  }
  FeatureMatrix m;
  m.sample_ids_ = std::move(sample_ids);
  m.columns_ = std::move(columns);
  m.values_ = std::move(values);
  m.labels_ = std::move(labels);
  return m;
}

std::vector<double> FeatureMatrix::column(std::size_t feature) const {
  std::vector<double> out(n_samples());
  for (std::size_t s = 0; s < n_samples(); ++s) out[s] = at(s, feature);
  return out;
}

std::size_t FeatureMatrix::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i] == name) return i;
  fail(ErrorKind::MissingFeature, "no column named '" + name + "'");
}

FeatureMatrix FeatureMatrix::select_columns(
    std::span<const std::size_t> indices) const {
  std::vector<std::string> cols;
  std::vector<double> vals;
  cols.reserve(indices.size());
  vals.reserve(indices.size() * n_samples());
  for (std::size_t i : indices) cols.push_back(columns_[i]);
  for (std::size_t s = 0; s < n_samples(); ++s)
    for (std::size_t i : indices) vals.push_back(at(s, i));
  return create(sample_ids_, std::move(cols), std::move(vals), labels_);
}

FeatureMatrix FeatureMatrix::select_columns(
    const std::vector<std::string>& names) const {
  std::vector<std::size_t> idx;
  idx.reserve(names.size());
  for (const auto& n : names) idx.push_back(column_index(n));
  return select_columns(idx);
}

FeatureMatrix FeatureMatrix::select_rows(
    std::span<const std::size_t> indices) const {
  std::vector<std::string> ids;
  std::vector<double> vals;
  ids.reserve(indices.size());
  vals.reserve(indices.size() * n_features());
  std::optional<std::vector<int>> labels;
  if (labels_) labels.emplace();
  for (std::size_t s : indices) {
    ids.push_back(sample_ids_[s]);
    const auto r = row(s);
    vals.insert(vals.end(), r.begin(), r.end());
    if (labels_) labels->push_back((*labels_)[s]);
  }
  return create(std::move(ids), columns_, std::move(vals), std::move(labels));
}

const std::vector<int>& FeatureMatrix::require_labels() const {
  if (!labels_) fail(ErrorKind::BadFormat, "feature matrix has no labels");
  return *labels_;
}

namespace {

int parse_label(const std::string& field) {
  if (field == "0" || field == "benign") return 0;
  if (field == "1" || field == "malignant") return 1;
  fail(ErrorKind::BadFormat, "label must be 0/1 or benign/malignant, got '" +
                                 field + "'");
}

}  // namespace

FeatureMatrix read_feature_csv(const std::filesystem::path& path) {
  const auto rows = csv::read_file(path);
  if (rows.size() < 2)
    fail(ErrorKind::BadFormat, path.string() + ": need header and data rows");
  const auto& header = rows[0];
  if (header.size() < 2 || header[0] != "sample_id")
    fail(ErrorKind::BadFormat,
         path.string() + ": first column must be sample_id");
  const bool has_label = header.size() >= 2 && header[1] == "label";
  const std::size_t first_feature = has_label ? 2 : 1;

  std::vector<std::string> columns(header.begin() + first_feature,
                                   header.end());
  std::vector<std::string> ids;
  std::vector<double> values;
  std::optional<std::vector<int>> labels;
  if (has_label) labels.emplace();

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size())
      fail(ErrorKind::BadFormat,
           path.string() + ": row " + std::to_string(r + 1) +
               " has wrong field count");
    ids.push_back(row[0]);
    if (has_label) labels->push_back(parse_label(row[1]));
    for (std::size_t c = first_feature; c < row.size(); ++c)
      values.push_back(csv::parse_double(row[c]));
  }
  return FeatureMatrix::create(std::move(ids), std::move(columns),
                               std::move(values), std::move(labels));
}

void write_feature_csv(const std::filesystem::path& path,
                       const FeatureMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());

  std::vector<std::string> header{"sample_id"};
  if (m.labels()) header.push_back("label");
  for (const auto& c : m.columns()) header.push_back(c);
  csv::write_row(out, header);

  std::vector<std::string> fields;
  for (std::size_t s = 0; s < m.n_samples(); ++s) {
    fields.clear();
    fields.push_back(m.sample_ids()[s]);
    if (m.labels()) fields.push_back(std::to_string((*m.labels())[s]));
    for (std::size_t f = 0; f < m.n_features(); ++f)
      fields.push_back(csv::format_double(m.at(s, f)));
    csv::write_row(out, fields);
  }
}

}  // namespace radex::tabular
