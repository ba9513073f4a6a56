#include "radex/haar.hpp"

#include <algorithm>
#include <cmath>

#include "radex/error.hpp"

namespace radex::wavelet {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

HaarSubbands haar_decompose(const imaging::GrayImage2D& image,
                            std::string origin) {
  image.validate();
  if (image.width < 2 || image.height < 2)
    fail(ErrorKind::TooSmall, "haar decomposition needs at least 2x2 pixels");

  const int h = image.height, w = image.width;
  const int oh = (h + 1) / 2, ow = (w + 1) / 2;

  // Pass 1: filter down each column, stride 2; odd heights replicate the
  // last row.
  imaging::GrayImage2D low = imaging::GrayImage2D::filled(w, oh, 0.0);
  imaging::GrayImage2D high = imaging::GrayImage2D::filled(w, oh, 0.0);
  for (int i = 0; i < oh; ++i) {
    const int r0 = 2 * i;
    const int r1 = std::min(2 * i + 1, h - 1);
    for (int c = 0; c < w; ++c) {
      const double a = image.at(r0, c), b = image.at(r1, c);
      low.at(i, c) = (a + b) * kInvSqrt2;
      high.at(i, c) = (a - b) * kInvSqrt2;
    }
  }

  // Pass 2: filter along each row, stride 2; odd widths replicate the last
  // column.
  HaarSubbands out;
  out.origin = std::move(origin);
  const double spacing = image.pixel_spacing;
  out.ll = imaging::GrayImage2D::filled(ow, oh, 0.0, spacing);
  out.lh = imaging::GrayImage2D::filled(ow, oh, 0.0, spacing);
  out.hl = imaging::GrayImage2D::filled(ow, oh, 0.0, spacing);
  out.hh = imaging::GrayImage2D::filled(ow, oh, 0.0, spacing);
  for (int i = 0; i < oh; ++i) {
    for (int j = 0; j < ow; ++j) {
      const int c0 = 2 * j;
      const int c1 = std::min(2 * j + 1, w - 1);
      out.ll.at(i, j) = (low.at(i, c0) + low.at(i, c1)) * kInvSqrt2;
      out.lh.at(i, j) = (low.at(i, c0) - low.at(i, c1)) * kInvSqrt2;
      out.hl.at(i, j) = (high.at(i, c0) + high.at(i, c1)) * kInvSqrt2;
      out.hh.at(i, j) = (high.at(i, c0) - high.at(i, c1)) * kInvSqrt2;
    }
  }
  return out;
}

imaging::RoiMask downsample_mask_majority(const imaging::RoiMask& mask) {
  mask.validate();
  const int oh = (mask.height + 1) / 2, ow = (mask.width + 1) / 2;
  imaging::RoiMask out = imaging::RoiMask::empty(ow, oh);
  for (int i = 0; i < oh; ++i)
    for (int j = 0; j < ow; ++j) {
      int total = 0, set = 0;
      for (int dr = 0; dr < 2; ++dr)
        for (int dc = 0; dc < 2; ++dc) {
          const int r = 2 * i + dr, c = 2 * j + dc;
          if (r >= mask.height || c >= mask.width) continue;
          ++total;
          set += mask.at(r, c) ? 1 : 0;
        }
      out.set(i, j, 2 * set >= total);
    }
  return out;
}

}  // namespace radex::wavelet
