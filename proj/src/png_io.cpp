#include "radex/png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "radex/error.hpp"

namespace radex::imaging {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReader() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriter() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
  }
};

// Decodes rows of gray samples at the stored bit depth.
void read_gray_samples(const std::filesystem::path& path, int& width,
                       int& height, int& bit_depth,
                       std::vector<std::vector<png_byte>>& rows) {
  FilePtr file(std::fopen(path.string().c_str(), "rb"));
  if (!file) fail(ErrorKind::Io, "cannot open " + path.string());

  png_byte header[8];
  if (std::fread(header, 1, 8, file.get()) != 8 ||
      png_sig_cmp(header, 0, 8) != 0)
    fail(ErrorKind::BadFormat, path.string() + " is not a PNG file");

  PngReader r;
  r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                 nullptr);
  if (!r.png) fail(ErrorKind::Io, "png_create_read_struct failed");
  r.info = png_create_info_struct(r.png);
  if (!r.info) fail(ErrorKind::Io, "png_create_info_struct failed");
  if (setjmp(png_jmpbuf(r.png)))
    fail(ErrorKind::BadFormat, "failed to decode " + path.string());

  png_init_io(r.png, file.get());
  png_set_sig_bytes(r.png, 8);
  png_read_info(r.png, r.info);

  const int color_type = png_get_color_type(r.png, r.info);
  bit_depth = png_get_bit_depth(r.png, r.info);
  if (color_type != PNG_COLOR_TYPE_GRAY)
    fail(ErrorKind::BadFormat,
         path.string() + ": only grayscale PNG is supported");
  if (bit_depth != 8 && bit_depth != 16)
    fail(ErrorKind::BadFormat,
         path.string() + ": only 8- or 16-bit grayscale PNG is supported");

  png_set_interlace_handling(r.png);
  png_read_update_info(r.png, r.info);

  width = static_cast<int>(png_get_image_width(r.png, r.info));
  height = static_cast<int>(png_get_image_height(r.png, r.info));
  const std::size_t rowbytes = png_get_rowbytes(r.png, r.info);

  rows.assign(height, std::vector<png_byte>(rowbytes));
  std::vector<png_bytep> row_ptrs(height);
  for (int i = 0; i < height; ++i) row_ptrs[i] = rows[i].data();
  png_read_image(r.png, row_ptrs.data());
  png_read_end(r.png, nullptr);
}

}  // namespace

GrayImage2D read_gray_png(const std::filesystem::path& path) {
  int width = 0, height = 0, bit_depth = 0;
  std::vector<std::vector<png_byte>> rows;
  read_gray_samples(path, width, height, bit_depth, rows);

  GrayImage2D img = GrayImage2D::filled(width, height, 0.0);
  for (int r = 0; r < height; ++r) {
    const auto& row = rows[r];
    for (int c = 0; c < width; ++c) {
      double v;
      if (bit_depth == 8) {
        v = row[c];
      } else {  // PNG stores 16-bit samples big-endian
        v = static_cast<double>((static_cast<unsigned>(row[2 * c]) << 8) |
                                row[2 * c + 1]);
      }
      img.at(r, c) = v;
    }
  }
  return img;
}

RoiMask read_mask_png(const std::filesystem::path& path) {
  int width = 0, height = 0, bit_depth = 0;
  std::vector<std::vector<png_byte>> rows;
  read_gray_samples(path, width, height, bit_depth, rows);
  if (bit_depth != 8)
    fail(ErrorKind::BadFormat, path.string() + ": masks must be 8-bit PNG");

  RoiMask mask = RoiMask::empty(width, height);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) mask.set(r, c, rows[r][c] != 0);
  return mask;
}

void write_gray_png8(const std::filesystem::path& path,
                     const GrayImage2D& image) {
  image.validate();
  FilePtr file(std::fopen(path.string().c_str(), "wb"));
  if (!file) fail(ErrorKind::Io, "cannot write " + path.string());

  PngWriter w;
  w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                  nullptr);
  if (!w.png) fail(ErrorKind::Io, "png_create_write_struct failed");
  w.info = png_create_info_struct(w.png);
  if (!w.info) fail(ErrorKind::Io, "png_create_info_struct failed");
  if (setjmp(png_jmpbuf(w.png)))
    fail(ErrorKind::Io, "failed to encode " + path.string());

  png_init_io(w.png, file.get());
  png_set_IHDR(w.png, w.info, image.width, image.height, 8,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(w.png, w.info);

  std::vector<png_byte> row(image.width);
  for (int r = 0; r < image.height; ++r) {
    for (int c = 0; c < image.width; ++c) {
      const double v = std::clamp(image.at(r, c), 0.0, 255.0);
      row[c] = static_cast<png_byte>(std::lround(v));
    }
    png_write_row(w.png, row.data());
  }
  png_write_end(w.png, nullptr);
}

}  // namespace radex::imaging
