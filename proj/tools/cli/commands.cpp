#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "radex/csv.hpp"
#include "radex/error.hpp"
#include "radex/explain.hpp"
#include "radex/feature_matrix.hpp"
#include "radex/features.hpp"
#include "radex/forest.hpp"
#include "radex/json_schema.hpp"
#include "radex/manifest.hpp"
#include "radex/parallel.hpp"
#include "radex/png_io.hpp"
#include "radex/preprocess.hpp"
#include "radex/selection.hpp"
#include "radex/stats.hpp"
#include "radex/tensor_io.hpp"

namespace radex::cli {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::Io, "failed writing " + path.string());
}

void write_json(const std::filesystem::path& path,
                const nlohmann::ordered_json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::BadFormat, path.string() + ": " + e.what());
  }
}

}  // namespace

void cmd_extract(const GlobalOptions& g, const std::filesystem::path& manifest,
                 const std::filesystem::path& out) {
  const auto rows = read_manifest(manifest);
  const radiomics::ExtractConfig extract_cfg{g.config.ng,
                                             g.config.gldm_alpha};

  struct SampleResult {
    std::vector<double> values;
    std::string error;
  };
  std::vector<SampleResult> results(rows.size());

  parallel_for(rows.size(), g.jobs, [&](std::size_t i) {
    try {
      const auto image = imaging::read_gray_png(rows[i].image_path);
      const auto mask = imaging::read_mask_png(rows[i].mask_path);
      results[i].values =
          radiomics::extract_all(image, mask, extract_cfg).values;
    } catch (const Error& e) {
      results[i].error = e.what();
    }
  });

  // assemble in manifest order; failures abort unless --skip-errors
  std::vector<std::string> ids;
  std::optional<std::vector<int>> labels;
  const bool has_labels = rows.front().label.has_value();
  if (has_labels) labels.emplace();
  std::vector<double> values;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!results[i].error.empty()) {
      const std::string message =
          "sample " + rows[i].sample_id + ": " + results[i].error;
      if (!g.skip_errors) fail(ErrorKind::BadFormat, message);
      std::cerr << "skipping " << message << "\n";
      continue;
    }
    ids.push_back(rows[i].sample_id);
    if (has_labels) labels->push_back(rows[i].label.value());
    values.insert(values.end(), results[i].values.begin(),
                  results[i].values.end());
  }
  if (ids.empty()) fail(ErrorKind::EmptyMask, "no sample extracted");

  const auto m = tabular::FeatureMatrix::create(
      std::move(ids), radiomics::feature_names(), std::move(values),
      std::move(labels));
  tabular::write_feature_csv(out, m);
}

void cmd_preprocess(const GlobalOptions& g,
                    const std::filesystem::path& features,
                    const std::filesystem::path& out,
                    const std::filesystem::path& provenance) {
  const auto m = tabular::read_feature_csv(features);
  const auto nzv = tabular::near_zero_variance_filter(m, g.config.nzv_cutoff);
  const auto pruned = tabular::correlation_prune(
      nzv.filtered, g.config.prune_threshold, g.jobs);
  tabular::write_feature_csv(out, pruned.pruned);

  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "preprocess_provenance";
  doc["nzv_cutoff"] = g.config.nzv_cutoff;
  doc["prune_threshold"] = g.config.prune_threshold;
  auto& dropped = doc["dropped"] = nlohmann::ordered_json::array();
  for (const auto& name : nzv.dropped)
    dropped.push_back({{"name", name}, {"reason", "nzv"}});
  for (const auto& [name, kept] : pruned.dropped)
    dropped.push_back({{"name", name}, {"reason", "correlated_with:" + kept}});
  doc["n_features_in"] = m.n_features();
  doc["n_features_out"] = pruned.pruned.n_features();
  write_json(provenance, doc);
}

void cmd_select(const GlobalOptions& g, const std::filesystem::path& features,
                const std::filesystem::path& out,
                const std::optional<std::filesystem::path>& features_out) {
  const auto m = tabular::read_feature_csv(features);
  learn::SfsParams params{g.config.sfs_k_max, g.config.sfs_patience,
                          g.config.rf};
  const auto report = learn::sfs_select(m, params, g.config.cv, g.jobs);
  write_json(out, report.to_json());
  if (features_out) {
    auto reduced = m.select_columns(report.chosen);
    tabular::write_feature_csv(*features_out, reduced);
  }
}

void cmd_train(const GlobalOptions& g, const std::filesystem::path& features,
               const std::filesystem::path& model_out,
               const std::filesystem::path& report_out) {
  const auto m = tabular::read_feature_csv(features);
  const auto sel = learn::cv_select_best(m, g.config.cv, g.config.rf, g.jobs);
  write_json(model_out, sel.best.to_json());

  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["kind"] = "cv_report";
  doc["scheme"] = {{"k", g.config.cv.k},
                   {"repeats", g.config.cv.repeats},
                   {"seed", g.config.cv.seed},
                   {"stratified", g.config.cv.stratified}};
  doc["rf"] = {{"n_estimators", g.config.rf.n_estimators},
               {"seed", g.config.rf.seed}};
  doc["best"] = {{"repeat", sel.best_repeat},
                 {"fold", sel.best_fold},
                 {"held_out_accuracy", sel.best_fold_accuracy}};
  doc["pooled"] = sel.pooled.to_json();
  write_json(report_out, doc);
}

void cmd_predict(const GlobalOptions& g, const std::filesystem::path& model,
                 const std::filesystem::path& features,
                 const std::filesystem::path& out) {
  (void)g;
  const auto forest = learn::ForestModel::from_json(read_json(model));
  const auto m = tabular::read_feature_csv(features);
  const auto proba = learn::rf_predict_proba(forest, m);

  std::ostringstream text;
  std::vector<std::string> fields{"sample_id", "probability",
                                  "predicted_label"};
  csv::write_row(text, fields);
  for (std::size_t s = 0; s < m.n_samples(); ++s) {
    fields = {m.sample_ids()[s], csv::format_double(proba[s]),
              proba[s] >= 0.5 ? "malignant" : "benign"};
    csv::write_row(text, fields);
  }
  write_text(out, text.str());
}

void cmd_explain(const GlobalOptions& g,
                 const std::filesystem::path& radiomic,
                 const std::filesystem::path& deep,
                 const std::filesystem::path& out,
                 const std::optional<std::filesystem::path>& csv_out,
                 const std::string& provenance) {
  const auto r = tabular::read_feature_csv(radiomic);
  const auto d = tabular::read_feature_csv(deep);
  const auto cm = xai::correlation_matrix(r, d, g.jobs);
  const auto report = xai::build_explain_report(cm, g.config.thresholds,
                                                g.config.mode, provenance);
  write_json(out, report.to_json());
  if (csv_out) write_text(*csv_out, report.to_csv());
}

void cmd_cam(const GlobalOptions& g, const CamOptions& options) {
  (void)g;
  if (options.methods.empty())
    fail(ErrorKind::BadArgument, "at least one --method required");
  const auto activations = cam::read_atns(options.activations);
  std::filesystem::create_directories(options.out_dir);

  std::vector<std::pair<std::string, cam::SaliencyMap>> maps;
  for (const auto& method : options.methods) {
    cam::SaliencyMap map;
    if (method == "grad") {
      if (!options.gradients)
        fail(ErrorKind::BadArgument, "--method grad requires --gradients");
      map = cam::grad_cam(activations, cam::read_atns(*options.gradients));
    } else if (method == "score") {
      if (!options.weights)
        fail(ErrorKind::BadArgument, "--method score requires --weights");
      map = cam::score_cam(activations,
                           cam::read_weights_csv(*options.weights),
                           options.softmax_weights);
    } else if (method == "eigen") {
      map = cam::eigen_cam(activations);
    } else {
      fail(ErrorKind::BadArgument, "unknown method '" + method + "'");
    }
    if (options.upsample > 0)
      map = cam::upsample_bilinear(map, options.upsample, options.upsample);
    cam::write_saliency(options.out_dir / (method + ".png"),
                        options.out_dir / (method + ".atns"), map);
    maps.emplace_back(method, std::move(map));
  }

  if (maps.size() >= 2) {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["kind"] = "saliency_discrepancy";
    doc["q"] = options.top_q;
    auto& pairs = doc["pairs"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < maps.size(); ++i)
      for (std::size_t j = i + 1; j < maps.size(); ++j) {
        const auto d =
            cam::map_discrepancy(maps[i].second, maps[j].second,
                                 options.top_q);
        nlohmann::ordered_json entry;
        entry["a"] = maps[i].first;
        entry["b"] = maps[j].first;
        if (d.pearson)
          entry["pearson"] = *d.pearson;
        else
          entry["pearson"] = nullptr;
        entry["top_q_jaccard"] = d.top_q_jaccard;
        pairs.push_back(std::move(entry));
      }
    write_json(options.out_dir / "discrepancy.json", doc);
  }
}

void cmd_report(const GlobalOptions& g, const std::filesystem::path& input,
                const std::optional<std::filesystem::path>& schema,
                const std::optional<std::filesystem::path>& dictionary_out) {
  (void)g;
  if (dictionary_out) {
    std::ostringstream text;
    std::vector<std::string> fields{"name", "category", "source", "base_name",
                                    "formula"};
    csv::write_row(text, fields);
    for (const auto& e : radiomics::feature_dictionary()) {
      fields = {e.descriptor.full_name(),
                radiomics::to_string(e.descriptor.category),
                radiomics::to_string(e.descriptor.source),
                e.descriptor.base_name, e.formula};
      csv::write_row(text, fields);
    }
    write_text(*dictionary_out, text.str());
    if (input.empty()) return;
  }

  const auto doc = read_json(input);
  if (schema) {
    const auto violations =
        json_schema_violations(doc, read_json(*schema));
    if (!violations.empty()) {
      for (const auto& v : violations) std::cerr << v << "\n";
      fail(ErrorKind::BadFormat,
           input.string() + " does not match the schema");
    }
    std::cout << "schema: ok\n";
  }

  // human-readable digest of the grouped counts and trend
  std::cout << "mode: " << doc.value("mode", std::string("?")) << "\n";
  std::cout << "samples: " << doc.value("n_samples", 0) << "\n";
  std::cout << "thresholds:";
  for (const auto& t : doc.at("thresholds")) std::cout << " " << t;
  std::cout << "\n\ncounts per base feature (summed over filter sources):\n";
  for (const auto& group : doc.at("grouped")) {
    std::cout << "  " << group.at("base").get<std::string>() << ":";
    for (const auto& c : group.at("counts")) std::cout << " " << c;
    std::cout << "\n";
  }
  const auto& trend = doc.at("trend");
  if (!trend.empty()) {
    std::cout << "\ntrend: " << trend.front().at("total") << " pairs at M="
              << trend.front().at("M") << " down to "
              << trend.back().at("total") << " at M="
              << trend.back().at("M") << "\n";
  }
  std::cout << "undefined pairs: " << doc.value("undefined_pairs", 0) << "\n";
}

}  // namespace radex::cli
