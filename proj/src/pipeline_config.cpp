#include "radex/pipeline_config.hpp"

#include <fstream>
#include <sstream>
#include <string>

#include "radex/csv.hpp"
#include "radex/error.hpp"

namespace radex {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<double> parse_double_list(const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(csv::parse_double(trim(item)));
  if (out.empty()) fail(ErrorKind::BadFormat, "empty list value");
  return out;
}

bool parse_bool(const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  fail(ErrorKind::BadFormat, "expected true/false, got '" + value + "'");
}

}  // namespace

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open config " + path.string());

  PipelineConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::BadFormat, path.string() + ":" +
                                     std::to_string(line_no) +
                                     ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "ng")
        cfg.ng = static_cast<int>(csv::parse_int(value));
      else if (key == "gldm_alpha")
        cfg.gldm_alpha = static_cast<int>(csv::parse_int(value));
      else if (key == "nzv_cutoff")
        cfg.nzv_cutoff = csv::parse_double(value);
      else if (key == "prune_threshold")
        cfg.prune_threshold = csv::parse_double(value);
      else if (key == "thresholds")
        cfg.thresholds = parse_double_list(value);
      else if (key == "mode")
        cfg.mode = xai::threshold_mode_from_string(value);
      else if (key == "cv.k")
        cfg.cv.k = static_cast<int>(csv::parse_int(value));
      else if (key == "cv.repeats")
        cfg.cv.repeats = static_cast<int>(csv::parse_int(value));
      else if (key == "cv.seed")
        cfg.cv.seed = static_cast<std::uint64_t>(csv::parse_int(value));
      else if (key == "cv.stratified")
        cfg.cv.stratified = parse_bool(value);
      else if (key == "rf.n_estimators")
        cfg.rf.n_estimators = static_cast<int>(csv::parse_int(value));
      else if (key == "rf.seed")
        cfg.rf.seed = static_cast<std::uint64_t>(csv::parse_int(value));
      else if (key == "sfs.k_max")
        cfg.sfs_k_max = static_cast<int>(csv::parse_int(value));
      else if (key == "sfs.patience")
        cfg.sfs_patience = static_cast<int>(csv::parse_int(value));
      else
        fail(ErrorKind::BadFormat, "unknown config key '" + key + "'");
    } catch (const Error& e) {
      fail(ErrorKind::BadFormat, path.string() + ":" +
                                     std::to_string(line_no) + ": " +
                                     e.what());
    }
  }
  return cfg;
}

}  // namespace radex
