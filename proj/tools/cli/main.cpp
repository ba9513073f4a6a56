// Radiomic feature extraction, tabular model training, and deep-feature
// explanation toolkit. Subcommands: extract, preprocess, select, train,
// predict, explain, cam, report.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "radex/error.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radex: radiomics extraction, training, and deep-feature "
               "explanation"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::optional<std::uint64_t> seed;
  radex::cli::GlobalOptions global;
  app.add_option("--config", config_path, "pipeline config file");
  app.add_option("--seed", seed, "master seed overriding cv.seed and rf.seed");
  app.add_option("--jobs", global.jobs,
                 "worker count; 0 = all cores, 1 = serial");
  app.add_flag("--skip-errors", global.skip_errors,
               "log per-sample failures and continue");

  std::string manifest, features, out, provenance_path, model, radiomic, deep;
  std::string report_out, provenance_text;
  std::optional<std::string> features_out, csv_out, schema, dictionary_out;

  auto* extract = app.add_subcommand("extract", "manifest -> feature CSV");
  extract->add_option("--manifest", manifest)->required();
  extract->add_option("--out", out)->required();

  auto* preprocess = app.add_subcommand(
      "preprocess", "variance + correlation filters -> filtered CSV");
  preprocess->add_option("--features", features)->required();
  preprocess->add_option("--out", out)->required();
  preprocess->add_option("--provenance", provenance_path)->required();

  auto* select = app.add_subcommand(
      "select", "sequential forward selection -> selection JSON");
  select->add_option("--features", features)->required();
  select->add_option("--out", out)->required();
  select->add_option("--features-out", features_out,
                     "write the selected columns as CSV");

  auto* train = app.add_subcommand(
      "train", "repeated stratified CV -> best model + metrics");
  train->add_option("--features", features)->required();
  train->add_option("--model-out", model)->required();
  train->add_option("--report-out", report_out)->required();

  auto* predict =
      app.add_subcommand("predict", "model + features -> probabilities CSV");
  predict->add_option("--model", model)->required();
  predict->add_option("--features", features)->required();
  predict->add_option("--out", out)->required();

  auto* explain = app.add_subcommand(
      "explain", "correlate radiomic and deep features -> report");
  explain->add_option("--radiomic", radiomic)->required();
  explain->add_option("--deep", deep)->required();
  explain->add_option("--out", out)->required();
  explain->add_option("--csv-out", csv_out);
  explain->add_option("--provenance", provenance_text,
                      "free-form deep-feature provenance string");

  radex::cli::CamOptions cam_options;
  std::string activations, out_dir;
  std::optional<std::string> gradients, weights;
  auto* cam = app.add_subcommand(
      "cam", "reconstruct saliency maps from exported tensors");
  cam->add_option("--activations", activations)->required();
  cam->add_option("--method", cam_options.methods,
                  "grad, score, or eigen (repeatable)")
      ->required();
  cam->add_option("--gradients", gradients, "gradient tensor for grad");
  cam->add_option("--weights", weights, "channel weight CSV for score");
  cam->add_flag("--softmax-weights", cam_options.softmax_weights,
                "softmax the score weights first");
  cam->add_option("--upsample", cam_options.upsample,
                  "upsample maps to N x N before export");
  cam->add_option("--top-q", cam_options.top_q,
                  "top fraction for the overlap measure");
  cam->add_option("--out-dir", out_dir)->required();

  auto* report = app.add_subcommand(
      "report", "summarize or validate an explanation report");
  report->add_option("--input", out, "explanation report JSON");
  report->add_option("--schema", schema, "validate against this JSON schema");
  report->add_option("--dictionary", dictionary_out,
                     "write the feature dictionary CSV and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (config_path) global.config = radex::PipelineConfig::load(*config_path);
    if (seed) global.config.apply_seed(*seed);

    if (*extract) {
      radex::cli::cmd_extract(global, manifest, out);
    } else if (*preprocess) {
      radex::cli::cmd_preprocess(global, features, out, provenance_path);
    } else if (*select) {
      radex::cli::cmd_select(
          global, features, out,
          features_out ? std::optional<std::filesystem::path>(*features_out)
                       : std::nullopt);
    } else if (*train) {
      radex::cli::cmd_train(global, features, model, report_out);
    } else if (*predict) {
      radex::cli::cmd_predict(global, model, features, out);
    } else if (*explain) {
      radex::cli::cmd_explain(
          global, radiomic, deep, out,
          csv_out ? std::optional<std::filesystem::path>(*csv_out)
                  : std::nullopt,
          provenance_text);
    } else if (*cam) {
      cam_options.activations = activations;
      cam_options.out_dir = out_dir;
      if (gradients) cam_options.gradients = *gradients;
      if (weights) cam_options.weights = *weights;
      radex::cli::cmd_cam(global, cam_options);
    } else if (*report) {
      if (!dictionary_out && out.empty())
        radex::fail(radex::ErrorKind::BadArgument,
                    "report needs --input or --dictionary");
      radex::cli::cmd_report(
          global, out,
          schema ? std::optional<std::filesystem::path>(*schema)
                 : std::nullopt,
          dictionary_out
              ? std::optional<std::filesystem::path>(*dictionary_out)
              : std::nullopt);
    }
  } catch (const radex::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_validation() ? kExitValidation : kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
