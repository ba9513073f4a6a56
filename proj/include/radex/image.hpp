#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace radex::imaging {

/// 2D grayscale raster, row-major, non-negative finite intensities.
struct GrayImage2D {
  int width = 0;
  int height = 0;
  double pixel_spacing = 1.0;  // physical size of one pixel edge, mm
  std::vector<double> pixels;  // height * width, row-major

  static GrayImage2D filled(int w, int h, double value, double spacing = 1.0);

  double at(int row, int col) const {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  double& at(int row, int col) {
    return pixels[static_cast<std::size_t>(row) * width + col];
  }
  std::size_t size() const { return pixels.size(); }

  /// Throws on broken invariants (size mismatch, non-finite pixels).
  void validate() const;
};

/// Binary region aligned with a GrayImage2D.
struct RoiMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;  // row-major, 0 or 1

  static RoiMask full(int w, int h);
  static RoiMask empty(int w, int h);

  bool at(int row, int col) const {
    return bits[static_cast<std::size_t>(row) * width + col] != 0;
  }
  void set(int row, int col, bool v) {
    bits[static_cast<std::size_t>(row) * width + col] = v ? 1 : 0;
  }
  std::size_t count_true() const;
  void validate() const;
};

/// ROI quantized to integer gray levels in [1, Ng]; levels are meaningful
/// only where the mask is true.
struct DiscretizedRoi {
  int ng = 0;
  RoiMask mask;
  std::vector<int> levels;  // row-major, aligned with mask

  int width() const { return mask.width; }
  int height() const { return mask.height; }
  int level_at(int row, int col) const {
    return levels[static_cast<std::size_t>(row) * mask.width + col];
  }
  bool in_mask(int row, int col) const { return mask.at(row, col); }
};

/// Tight axis-aligned crop around the mask's true pixels. In-mask
/// intensities are preserved bit-exactly.
std::pair<GrayImage2D, RoiMask> crop_to_bounding_box(const GrayImage2D& image,
                                                     const RoiMask& mask);

/// Corner-aligned bilinear resample to out_height x out_width.
GrayImage2D bilinear_resize(const GrayImage2D& image, int out_height,
                            int out_width);

/// Standardizes a patch to target x target: content that already fits is
/// centered in a zero field (tie offsets toward top-left); larger content is
/// bilinearly downsampled so its larger dimension equals target, then
/// zero-padded on the shorter one.
GrayImage2D resize_or_pad_patch(const GrayImage2D& image, int target);

/// Fixed-bin-count quantization over the in-mask intensity range:
/// level(x) = min(Ng, floor((x - min) / (max - min) * Ng) + 1);
/// a constant ROI maps every in-mask pixel to level 1.
DiscretizedRoi discretize_fixed_levels(const GrayImage2D& image,
                                       const RoiMask& mask, int ng);

/// Per-image affine rescale to [0, 1]; constant images map to all zeros.
GrayImage2D min_max_normalize(const GrayImage2D& image);

}  // namespace radex::imaging
