#pragma once

#include <filesystem>
#include <vector>

#include "radex/cam.hpp"

namespace radex::cam {

/// Binary tensor container: magic "ATNS", u16 format version (1), then
/// u32 K, H, W, then K*H*W IEEE-754 float32 values, row-major with k
/// outermost. All integers and floats little-endian.
TensorStack read_atns(const std::filesystem::path& path);
void write_atns(const std::filesystem::path& path, const TensorStack& stack);

/// Channel weights: CSV with one value per line.
std::vector<double> read_weights_csv(const std::filesystem::path& path);

/// Saliency export: 8-bit grayscale PNG (value * 255 rounded) plus a
/// float32 sidecar in the same container with K = 1.
void write_saliency(const std::filesystem::path& png_path,
                    const std::filesystem::path& sidecar_path,
                    const SaliencyMap& map);

/// Reads a K = 1 container back as a saliency map.
SaliencyMap read_saliency_sidecar(const std::filesystem::path& path);

}  // namespace radex::cam
