#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "radex/cross_validation.hpp"
#include "radex/explain.hpp"
#include "radex/forest.hpp"

namespace radex {

/// Pipeline defaults: 255 gray levels, variance cutoff 0.005, correlation
/// prune threshold 0.9, report thresholds {0.30, 0.35, 0.40, 0.45}, signed
/// mode, stratified 10-fold CV repeated 20 times, 100 forest estimators.
struct PipelineConfig {
  int ng = 255;
  int gldm_alpha = 0;
  double nzv_cutoff = 0.005;
  double prune_threshold = 0.9;
  std::vector<double> thresholds{xai::kDefaultThresholds.begin(),
                                 xai::kDefaultThresholds.end()};
  xai::ThresholdMode mode = xai::ThresholdMode::Signed;
  tabular::CvScheme cv{};     // k=10, repeats=20, seed=0, stratified
  learn::ForestParams rf{};   // n_estimators=100, seed=0
  int sfs_k_max = 10;
  int sfs_patience = 2;

  /// Routes one master seed to every seeded component.
  void apply_seed(std::uint64_t seed) {
    cv.seed = seed;
    rf.seed = seed;
  }

  /// Key-value text format: one `key = value` per line, '#' comments.
  /// Unknown keys are an error. See docs/file_formats.md for the key list.
  static PipelineConfig load(const std::filesystem::path& path);
};

}  // namespace radex
