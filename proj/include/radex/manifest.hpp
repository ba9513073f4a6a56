#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace radex {

/// One dataset row: sample id, image and mask paths, optional class label.
struct ManifestRow {
  std::string sample_id;
  std::filesystem::path image_path;
  std::filesystem::path mask_path;
  std::optional<int> label;  // 0 = benign, 1 = malignant
};

/// CSV manifest with header sample_id,image,mask[,label]. Relative paths
/// resolve against the manifest's directory; sample ids must be unique and
/// referenced files must exist.
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);

void write_manifest(const std::filesystem::path& path,
                    const std::vector<ManifestRow>& rows);

}  // namespace radex
