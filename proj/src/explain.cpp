#include "radex/explain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "radex/csv.hpp"
#include "radex/error.hpp"
#include "radex/parallel.hpp"
#include "radex/stats.hpp"

namespace radex::xai {

bool CorrelationMatrix::defined(std::size_t i, std::size_t j) const {
  return !std::isnan(at(i, j));
}

std::size_t CorrelationMatrix::undefined_count() const {
  std::size_t n = 0;
  for (double v : rho) n += std::isnan(v) ? 1 : 0;
  return n;
}

namespace {

CorrelationMatrix correlation_matrix_impl(
    const tabular::FeatureMatrix& radiomic, const tabular::FeatureMatrix& deep,
    int jobs) {
  if (radiomic.sample_ids() != deep.sample_ids())
    fail(ErrorKind::SampleMismatch,
         "radiomic and deep matrices must carry identical sample ids in "
         "identical order");
  if (radiomic.n_samples() < 3)
    fail(ErrorKind::TooFewSamples, "correlation needs n >= 3 samples");

  CorrelationMatrix cm;
  cm.a = radiomic.n_features();
  cm.b = deep.n_features();
  cm.n_samples = radiomic.n_samples();
  cm.radiomic_names = radiomic.columns();
  cm.deep_names = deep.columns();
  cm.rho.assign(cm.a * cm.b, 0.0);

  std::vector<tabular::RankedColumn> r_ranked(cm.a), d_ranked(cm.b);
  parallel_for(cm.a, jobs, [&](std::size_t i) {
    r_ranked[i] = tabular::RankedColumn::from_values(radiomic.column(i));
  });
  parallel_for(cm.b, jobs, [&](std::size_t j) {
    d_ranked[j] = tabular::RankedColumn::from_values(deep.column(j));
  });
  parallel_for(cm.a, jobs, [&](std::size_t i) {
    for (std::size_t j = 0; j < cm.b; ++j) {
      const auto rho = tabular::spearman_ranked(r_ranked[i], d_ranked[j]);
      cm.rho[i * cm.b + j] =
          rho ? *rho : std::numeric_limits<double>::quiet_NaN();
    }
  });
  return cm;
}

bool passes(double rho, double m, ThresholdMode mode) {
  if (std::isnan(rho)) return false;
  return mode == ThresholdMode::Signed ? rho >= m : std::abs(rho) >= m;
}

}  // namespace

CorrelationMatrix correlation_matrix(const tabular::FeatureMatrix& radiomic,
                                     const tabular::FeatureMatrix& deep,
                                     int jobs) {
  return correlation_matrix_impl(radiomic, deep, jobs);
}

CorrelationMatrix correlation_matrix_serial(
    const tabular::FeatureMatrix& radiomic,
    const tabular::FeatureMatrix& deep) {
  return correlation_matrix_impl(radiomic, deep, /*jobs=*/1);
}

const char* to_string(ThresholdMode mode) {
  return mode == ThresholdMode::Signed ? "signed" : "absolute";
}

ThresholdMode threshold_mode_from_string(const std::string& s) {
  if (s == "signed") return ThresholdMode::Signed;
  if (s == "absolute") return ThresholdMode::Absolute;
  fail(ErrorKind::BadArgument, "mode must be 'signed' or 'absolute'");
}

ThresholdReport threshold_counts(const CorrelationMatrix& cm,
                                 std::span<const double> thresholds,
                                 ThresholdMode mode) {
  if (thresholds.empty())
    fail(ErrorKind::BadArgument, "at least one threshold required");
  for (std::size_t t = 0; t < thresholds.size(); ++t) {
    if (thresholds[t] < -1.0 || thresholds[t] > 1.0)
      fail(ErrorKind::BadArgument, "thresholds must lie in [-1, 1]");
    if (t > 0 && thresholds[t] <= thresholds[t - 1])
      fail(ErrorKind::BadArgument, "thresholds must be strictly increasing");
  }

  ThresholdReport tr;
  tr.thresholds.assign(thresholds.begin(), thresholds.end());
  tr.mode = mode;
  tr.names = cm.radiomic_names;
  tr.counts.assign(cm.a, std::vector<std::size_t>(thresholds.size(), 0));
  for (std::size_t i = 0; i < cm.a; ++i)
    for (std::size_t j = 0; j < cm.b; ++j)
      for (std::size_t t = 0; t < thresholds.size(); ++t)
        if (passes(cm.at(i, j), thresholds[t], mode)) ++tr.counts[i][t];
  return tr;
}

GroupedReport group_by_base(
    const ThresholdReport& tr,
    const std::vector<radiomics::FeatureDescriptor>& descriptors) {
  if (descriptors.size() != tr.names.size())
    fail(ErrorKind::LengthMismatch,
         "descriptor list does not match report names");

  std::map<std::string, std::vector<std::size_t>> totals;
  for (std::size_t i = 0; i < tr.names.size(); ++i) {
    auto& acc = totals[descriptors[i].group_key()];
    if (acc.empty()) acc.assign(tr.thresholds.size(), 0);
    for (std::size_t t = 0; t < tr.thresholds.size(); ++t)
      acc[t] += tr.counts[i][t];
  }

  GroupedReport gr;
  gr.thresholds = tr.thresholds;
  for (auto& [base, counts] : totals)
    gr.groups.push_back({base, std::move(counts)});
  std::sort(gr.groups.begin(), gr.groups.end(),
            [](const GroupedReport::Group& x, const GroupedReport::Group& y) {
              if (x.counts[0] != y.counts[0]) return x.counts[0] > y.counts[0];
              return x.base < y.base;
            });
  return gr;
}

GroupedReport group_by_base(const ThresholdReport& tr) {
  std::vector<radiomics::FeatureDescriptor> descriptors;
  descriptors.reserve(tr.names.size());
  for (const auto& name : tr.names)
    descriptors.push_back(radiomics::parse_feature_name(name));
  return group_by_base(tr, descriptors);
}

std::vector<std::size_t> correlation_trend(const CorrelationMatrix& cm,
                                           std::span<const double> grid,
                                           ThresholdMode mode) {
  for (std::size_t t = 1; t < grid.size(); ++t)
    if (grid[t] <= grid[t - 1])
      fail(ErrorKind::BadArgument, "trend grid must be strictly increasing");
  std::vector<std::size_t> totals(grid.size(), 0);
  for (std::size_t t = 0; t < grid.size(); ++t)
    for (std::size_t i = 0; i < cm.a; ++i)
      for (std::size_t j = 0; j < cm.b; ++j)
        if (passes(cm.at(i, j), grid[t], mode)) ++totals[t];
  return totals;
}

std::vector<double> default_trend_grid() {
  std::vector<double> grid(101);
  for (int i = 0; i <= 100; ++i) grid[i] = i / 100.0;
  return grid;
}

ExplainReport build_explain_report(const CorrelationMatrix& cm,
                                   std::span<const double> thresholds,
                                   ThresholdMode mode,
                                   const std::string& deep_provenance) {
  ExplainReport report;
  report.per_feature = threshold_counts(cm, thresholds, mode);
  report.grouped = group_by_base(report.per_feature);
  report.trend_grid = default_trend_grid();
  report.trend_totals = correlation_trend(cm, report.trend_grid, mode);
  report.n_samples = cm.n_samples;
  report.undefined_pairs = cm.undefined_count();
  report.deep_provenance = deep_provenance;

  // columns contributing no defined correlation at all
  for (std::size_t i = 0; i < cm.a; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < cm.b && !any; ++j) any = cm.defined(i, j);
    if (!any) report.constant_radiomic.push_back(cm.radiomic_names[i]);
  }
  for (std::size_t j = 0; j < cm.b; ++j) {
    bool any = false;
    for (std::size_t i = 0; i < cm.a && !any; ++i) any = cm.defined(i, j);
    if (!any) report.constant_deep.push_back(cm.deep_names[j]);
  }
  return report;
}

nlohmann::ordered_json ExplainReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "deep_feature_explanation";
  doc["mode"] = to_string(per_feature.mode);
  doc["n_samples"] = n_samples;
  doc["thresholds"] = per_feature.thresholds;
  if (!deep_provenance.empty()) doc["deep_provenance"] = deep_provenance;

  auto& features = doc["per_feature"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < per_feature.names.size(); ++i) {
    const auto d = radiomics::parse_feature_name(per_feature.names[i]);
    features.push_back({{"name", per_feature.names[i]},
                        {"base", d.group_key()},
                        {"source", radiomics::to_string(d.source)},
                        {"counts", per_feature.counts[i]}});
  }
  auto& groups = doc["grouped"] = nlohmann::ordered_json::array();
  for (const auto& g : grouped.groups)
    groups.push_back({{"base", g.base}, {"counts", g.counts}});
  auto& trend = doc["trend"] = nlohmann::ordered_json::array();
  for (std::size_t t = 0; t < trend_grid.size(); ++t)
    trend.push_back({{"M", trend_grid[t]}, {"total", trend_totals[t]}});
  doc["undefined_pairs"] = undefined_pairs;
  doc["constant_radiomic"] = constant_radiomic;
  doc["constant_deep"] = constant_deep;
  return doc;
}

std::string ExplainReport::to_csv() const {
  std::ostringstream out;
  std::vector<std::string> header{"kind", "name", "base", "source"};
  for (double m : per_feature.thresholds)
    header.push_back("count_" + csv::format_double(m));
  csv::write_row(out, header);

  std::vector<std::string> fields;
  for (std::size_t i = 0; i < per_feature.names.size(); ++i) {
    const auto d = radiomics::parse_feature_name(per_feature.names[i]);
    fields = {"feature", per_feature.names[i], d.group_key(),
              radiomics::to_string(d.source)};
    for (std::size_t t = 0; t < per_feature.thresholds.size(); ++t)
      fields.push_back(std::to_string(per_feature.counts[i][t]));
    csv::write_row(out, fields);
  }
  for (const auto& g : grouped.groups) {
    fields = {"group", "", g.base, ""};
    for (std::size_t t = 0; t < g.counts.size(); ++t)
      fields.push_back(std::to_string(g.counts[t]));
    csv::write_row(out, fields);
  }
  return out.str();
}

}  // namespace radex::xai
