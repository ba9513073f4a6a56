#include "radex/image.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radex/error.hpp"

namespace radex::imaging {

GrayImage2D GrayImage2D::filled(int w, int h, double value, double spacing) {
  GrayImage2D img;
  img.width = w;
  img.height = h;
  img.pixel_spacing = spacing;
  img.pixels.assign(static_cast<std::size_t>(w) * h, value);
  return img;
}

void GrayImage2D::validate() const {
  if (width < 1 || height < 1)
    fail(ErrorKind::BadFormat, "image dimensions must be >= 1");
  if (pixels.size() != static_cast<std::size_t>(width) * height)
    fail(ErrorKind::BadFormat, "pixel buffer does not match dimensions");
  for (double v : pixels)
    if (!std::isfinite(v))
      fail(ErrorKind::BadFormat, "non-finite pixel intensity");
}

RoiMask RoiMask::full(int w, int h) {
  RoiMask m;
  m.width = w;
  m.height = h;
  m.bits.assign(static_cast<std::size_t>(w) * h, 1);
  return m;
}

RoiMask RoiMask::empty(int w, int h) {
  RoiMask m;
  m.width = w;
  m.height = h;
  m.bits.assign(static_cast<std::size_t>(w) * h, 0);
  return m;
}

std::size_t RoiMask::count_true() const {
  std::size_t n = 0;
  for (auto b : bits) n += b != 0;
  return n;
}

void RoiMask::validate() const {
  if (width < 1 || height < 1)
    fail(ErrorKind::BadFormat, "mask dimensions must be >= 1");
  if (bits.size() != static_cast<std::size_t>(width) * height)
    fail(ErrorKind::BadFormat, "mask buffer does not match dimensions");
}

std::pair<GrayImage2D, RoiMask> crop_to_bounding_box(const GrayImage2D& image,
                                                     const RoiMask& mask) {
  if (image.width != mask.width || image.height != mask.height)
    fail(ErrorKind::DimensionMismatch, "image and mask dimensions differ");
  int r0 = image.height, r1 = -1, c0 = image.width, c1 = -1;
  for (int r = 0; r < image.height; ++r)
    for (int c = 0; c < image.width; ++c)
      if (mask.at(r, c)) {
        r0 = std::min(r0, r);
        r1 = std::max(r1, r);
        c0 = std::min(c0, c);
        c1 = std::max(c1, c);
      }
  if (r1 < 0) fail(ErrorKind::EmptyMask, "mask has no true pixel");

  const int h = r1 - r0 + 1, w = c1 - c0 + 1;
  GrayImage2D out = GrayImage2D::filled(w, h, 0.0, image.pixel_spacing);
  RoiMask mout = RoiMask::empty(w, h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      out.at(r, c) = image.at(r0 + r, c0 + c);
      mout.set(r, c, mask.at(r0 + r, c0 + c));
    }
  return {std::move(out), std::move(mout)};
}

GrayImage2D bilinear_resize(const GrayImage2D& image, int out_height,
                            int out_width) {
  if (out_height < 1 || out_width < 1)
    fail(ErrorKind::BadArgument, "resize target must be >= 1");
  GrayImage2D out =
      GrayImage2D::filled(out_width, out_height, 0.0, image.pixel_spacing);
  // Corner alignment: output corners sample input corners exactly. A
  // singleton output axis samples coordinate 0.
  const double sy = out_height > 1
                        ? static_cast<double>(image.height - 1) / (out_height - 1)
                        : 0.0;
  const double sx = out_width > 1
                        ? static_cast<double>(image.width - 1) / (out_width - 1)
                        : 0.0;
  for (int r = 0; r < out_height; ++r) {
    const double fy = r * sy;
    const int y0 = std::min(static_cast<int>(fy), image.height - 1);
    const int y1 = std::min(y0 + 1, image.height - 1);
    const double wy = fy - y0;
    for (int c = 0; c < out_width; ++c) {
      const double fx = c * sx;
      const int x0 = std::min(static_cast<int>(fx), image.width - 1);
      const int x1 = std::min(x0 + 1, image.width - 1);
      const double wx = fx - x0;
      const double top = image.at(y0, x0) * (1.0 - wx) + image.at(y0, x1) * wx;
      const double bot = image.at(y1, x0) * (1.0 - wx) + image.at(y1, x1) * wx;
      out.at(r, c) = top * (1.0 - wy) + bot * wy;
    }
  }
  return out;
}

GrayImage2D resize_or_pad_patch(const GrayImage2D& image, int target) {
  if (target < 1) fail(ErrorKind::BadArgument, "target must be >= 1");
  image.validate();

  GrayImage2D content = image;
  if (image.width > target || image.height > target) {
    int nh, nw;
    if (image.height >= image.width) {
      nh = target;
      nw = std::max<int>(
          1, static_cast<int>(std::llround(
                 static_cast<double>(image.width) * target / image.height)));
    } else {
      nw = target;
      nh = std::max<int>(
          1, static_cast<int>(std::llround(
                 static_cast<double>(image.height) * target / image.width)));
    }
    content = bilinear_resize(image, nh, nw);
  }

  GrayImage2D out =
      GrayImage2D::filled(target, target, 0.0, image.pixel_spacing);
  const int off_r = (target - content.height) / 2;  // ties toward top-left
  const int off_c = (target - content.width) / 2;
  for (int r = 0; r < content.height; ++r)
    for (int c = 0; c < content.width; ++c)
      out.at(off_r + r, off_c + c) = content.at(r, c);
  return out;
}

DiscretizedRoi discretize_fixed_levels(const GrayImage2D& image,
                                       const RoiMask& mask, int ng) {
  if (image.width != mask.width || image.height != mask.height)
    fail(ErrorKind::DimensionMismatch, "image and mask dimensions differ");
  if (ng < 1) fail(ErrorKind::BadArgument, "Ng must be >= 1");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < image.height; ++r)
    for (int c = 0; c < image.width; ++c)
      if (mask.at(r, c)) {
        lo = std::min(lo, image.at(r, c));
        hi = std::max(hi, image.at(r, c));
      }
  if (!(lo <= hi)) fail(ErrorKind::EmptyMask, "mask has no true pixel");

  DiscretizedRoi roi;
  roi.ng = ng;
  roi.mask = mask;
  roi.levels.assign(image.size(), 0);
  const double range = hi - lo;
  for (int r = 0; r < image.height; ++r)
    for (int c = 0; c < image.width; ++c) {
      if (!mask.at(r, c)) continue;
      int level = 1;
      if (range > 0.0) {
        level = static_cast<int>(
                    std::floor((image.at(r, c) - lo) / range * ng)) +
                1;
        level = std::min(level, ng);
      }
      roi.levels[static_cast<std::size_t>(r) * image.width + c] = level;
    }
  return roi;
}

GrayImage2D min_max_normalize(const GrayImage2D& image) {
  image.validate();
  const auto [lo_it, hi_it] =
      std::minmax_element(image.pixels.begin(), image.pixels.end());
  const double lo = *lo_it, hi = *hi_it;
  GrayImage2D out = image;
  if (hi == lo) {
    std::fill(out.pixels.begin(), out.pixels.end(), 0.0);
    return out;
  }
  for (double& v : out.pixels) v = (v - lo) / (hi - lo);
  return out;
}

}  // namespace radex::imaging
