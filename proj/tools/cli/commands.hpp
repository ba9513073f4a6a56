#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "radex/pipeline_config.hpp"

namespace radex::cli {

struct GlobalOptions {
  PipelineConfig config;
  int jobs = 0;
  bool skip_errors = false;
};

void cmd_extract(const GlobalOptions& g, const std::filesystem::path& manifest,
                 const std::filesystem::path& out);

void cmd_preprocess(const GlobalOptions& g,
                    const std::filesystem::path& features,
                    const std::filesystem::path& out,
                    const std::filesystem::path& provenance);

void cmd_select(const GlobalOptions& g, const std::filesystem::path& features,
                const std::filesystem::path& out,
                const std::optional<std::filesystem::path>& features_out);

void cmd_train(const GlobalOptions& g, const std::filesystem::path& features,
               const std::filesystem::path& model_out,
               const std::filesystem::path& report_out);

void cmd_predict(const GlobalOptions& g, const std::filesystem::path& model,
                 const std::filesystem::path& features,
                 const std::filesystem::path& out);

void cmd_explain(const GlobalOptions& g,
                 const std::filesystem::path& radiomic,
                 const std::filesystem::path& deep,
                 const std::filesystem::path& out,
                 const std::optional<std::filesystem::path>& csv_out,
                 const std::string& provenance);

struct CamOptions {
  std::filesystem::path activations;
  std::vector<std::string> methods;
  std::optional<std::filesystem::path> gradients;
  std::optional<std::filesystem::path> weights;
  bool softmax_weights = false;
  int upsample = 0;  // 0 = keep native resolution
  double top_q = 0.2;
  std::filesystem::path out_dir;
};

void cmd_cam(const GlobalOptions& g, const CamOptions& options);

void cmd_report(const GlobalOptions& g, const std::filesystem::path& input,
                const std::optional<std::filesystem::path>& schema,
                const std::optional<std::filesystem::path>& dictionary_out);

}  // namespace radex::cli
