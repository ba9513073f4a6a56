#pragma once

#include <filesystem>

#include "radex/image.hpp"

namespace radex::imaging {

/// Reads an 8- or 16-bit grayscale PNG. Intensities are the stored sample
/// values (0..255 or 0..65535). Color, palette, and alpha images are
/// rejected: masks and ultrasound exports in this toolkit are grayscale only.
GrayImage2D read_gray_png(const std::filesystem::path& path);

/// Reads an 8-bit grayscale PNG as a mask; any nonzero byte is true.
RoiMask read_mask_png(const std::filesystem::path& path);

/// Writes an 8-bit grayscale PNG. Pixels are clamped to [0, 255] and
/// rounded to the nearest integer.
void write_gray_png8(const std::filesystem::path& path,
                     const GrayImage2D& image);

}  // namespace radex::imaging
