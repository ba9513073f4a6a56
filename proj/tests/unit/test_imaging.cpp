#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "radex/error.hpp"
#include "radex/image.hpp"
#include "radex/png_io.hpp"
#include "radex/rng.hpp"
#include "synth.hpp"

using namespace radex;
using namespace radex::imaging;

TEST_CASE("crop: single true pixel gives 1x1") {
  GrayImage2D img = GrayImage2D::filled(5, 5, 0.0);
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c) img.at(r, c) = r * 10 + c;
  RoiMask mask = RoiMask::empty(5, 5);
  mask.set(2, 2, true);

  const auto [crop, cmask] = crop_to_bounding_box(img, mask);
  CHECK(crop.width == 1);
  CHECK(crop.height == 1);
  CHECK(crop.at(0, 0) == 22.0);
  CHECK(cmask.at(0, 0));
}

TEST_CASE("crop: full mask is identity") {
  Rng rng(7);
  GrayImage2D img = synth::random_image(rng, 6, 4);
  const auto [crop, cmask] = crop_to_bounding_box(img, RoiMask::full(4, 6));
  CHECK(crop.pixels == img.pixels);
  CHECK(cmask.count_true() == 24);
}

TEST_CASE("crop: bounding box from two pixels") {
  // true at (1,1) and (2,3) -> rows 1..2, cols 1..3
  GrayImage2D img = GrayImage2D::filled(4, 4, 0.0);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) img.at(r, c) = r * 4 + c;
  RoiMask mask = RoiMask::empty(4, 4);
  mask.set(1, 1, true);
  mask.set(2, 3, true);

  const auto [crop, cmask] = crop_to_bounding_box(img, mask);
  CHECK(crop.height == 2);
  CHECK(crop.width == 3);
  CHECK(crop.at(0, 0) == img.at(1, 1));
  CHECK(crop.at(1, 2) == img.at(2, 3));
  CHECK(cmask.count_true() == 2);
}

TEST_CASE("crop: errors") {
  GrayImage2D img = GrayImage2D::filled(3, 3, 1.0);
  CHECK_THROWS_AS(crop_to_bounding_box(img, RoiMask::empty(3, 3)), Error);
  CHECK_THROWS_AS(crop_to_bounding_box(img, RoiMask::full(2, 3)), Error);
}

TEST_CASE("crop is idempotent") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    GrayImage2D img = synth::random_image(rng, 7, 9);
    RoiMask mask = RoiMask::empty(9, 7);
    for (int i = 0; i < 6; ++i)
      mask.set(static_cast<int>(rng.below(7)), static_cast<int>(rng.below(9)),
               true);
    const auto [c1, m1] = crop_to_bounding_box(img, mask);
    const auto [c2, m2] = crop_to_bounding_box(c1, m1);
    CHECK(c2.pixels == c1.pixels);
    CHECK(m2.bits == m1.bits);
  }
}

TEST_CASE("resize_or_pad: identity at target size") {
  Rng rng(3);
  GrayImage2D img = synth::random_image(rng, 128, 128);
  const auto out = resize_or_pad_patch(img, 128);
  CHECK(out.pixels == img.pixels);
}

TEST_CASE("resize_or_pad: small input centered in zeros") {
  GrayImage2D img = GrayImage2D::filled(2, 2, 7.0);
  const auto out = resize_or_pad_patch(img, 4);
  REQUIRE(out.width == 4);
  REQUIRE(out.height == 4);
  double sum = 0;
  for (double v : out.pixels) sum += v;
  CHECK(sum == 4 * 7.0);
  CHECK(out.at(1, 1) == 7.0);
  CHECK(out.at(1, 2) == 7.0);
  CHECK(out.at(2, 1) == 7.0);
  CHECK(out.at(2, 2) == 7.0);
  CHECK(out.at(0, 0) == 0.0);
}

TEST_CASE("resize_or_pad: centering ties go toward top-left") {
  GrayImage2D img = GrayImage2D::filled(2, 2, 1.0);
  const auto out = resize_or_pad_patch(img, 5);  // leftover 3 -> offset 1
  CHECK(out.at(1, 1) == 1.0);
  CHECK(out.at(2, 2) == 1.0);
  CHECK(out.at(3, 3) == 0.0);
}

TEST_CASE("resize_or_pad: 256x128 downsamples to 128x64 and pads") {
  Rng rng(5);
  GrayImage2D img = synth::random_image(rng, 256, 128);  // 256 rows, 128 cols
  const auto out = resize_or_pad_patch(img, 128);
  REQUIRE(out.width == 128);
  REQUIRE(out.height == 128);

  // content occupies columns 32..95 after centering the 128x64 resample
  const auto resized = bilinear_resize(img, 128, 64);
  for (int r = 0; r < 128; ++r) {
    CHECK(out.at(r, 0) == 0.0);
    CHECK(out.at(r, 31) == 0.0);
    CHECK(out.at(r, 32) == resized.at(r, 0));
    CHECK(out.at(r, 95) == resized.at(r, 63));
    CHECK(out.at(r, 96) == 0.0);
  }

  // corner values against the direct bilinear formula
  const double sy = 255.0 / 127.0, sx = 127.0 / 63.0;
  const std::vector<std::pair<int, int>> corners{
      {0, 0}, {0, 63}, {127, 0}, {127, 63}};
  for (const auto& [rr, cc] : corners) {
    const double expected = oracle::bilinear_sample(img, rr * sy, cc * sx);
    CHECK(resized.at(rr, cc) == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("resize_or_pad: output pixel count always target^2") {
  Rng rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    const int h = 1 + static_cast<int>(rng.below(40));
    const int w = 1 + static_cast<int>(rng.below(40));
    const int target = 1 + static_cast<int>(rng.below(20));
    GrayImage2D img = synth::random_image(rng, h, w, 0.5, 1.0);
    const auto out = resize_or_pad_patch(img, target);
    CHECK(out.pixels.size() ==
          static_cast<std::size_t>(target) * target);
    if (h <= target && w <= target) {
      // padding path: zeros appear only outside the placed content
      std::size_t nonzero = 0;
      for (double v : out.pixels) nonzero += v != 0.0;
      CHECK(nonzero == static_cast<std::size_t>(h) * w);
    }
  }
}

TEST_CASE("discretize: constant ROI maps to level 1") {
  GrayImage2D img = GrayImage2D::filled(3, 3, 4.2);
  const auto roi = discretize_fixed_levels(img, RoiMask::full(3, 3), 255);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(roi.level_at(r, c) == 1);
}

TEST_CASE("discretize: floor formula with clamp") {
  GrayImage2D img = GrayImage2D::filled(3, 1, 0.0);
  img.at(0, 0) = 0.0;
  img.at(0, 1) = 0.5;
  img.at(0, 2) = 1.0;
  const auto roi = discretize_fixed_levels(img, RoiMask::full(3, 1), 2);
  CHECK(roi.level_at(0, 0) == 1);
  CHECK(roi.level_at(0, 1) == 2);  // floor(0.5 * 2) + 1 = 2
  CHECK(roi.level_at(0, 2) == 2);  // clamped at Ng

  GrayImage2D img2 = GrayImage2D::filled(3, 1, 0.0);
  img2.at(0, 0) = 10.0;
  img2.at(0, 1) = 20.0;
  img2.at(0, 2) = 30.0;
  const auto roi2 = discretize_fixed_levels(img2, RoiMask::full(3, 1), 3);
  CHECK(roi2.level_at(0, 0) == 1);
  CHECK(roi2.level_at(0, 1) == 2);
  CHECK(roi2.level_at(0, 2) == 3);
}

TEST_CASE("discretize: invariant under increasing affine transforms") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const int h = 2 + static_cast<int>(rng.below(6));
    const int w = 2 + static_cast<int>(rng.below(6));
    GrayImage2D img = synth::random_image(rng, h, w, -5.0, 5.0);
    RoiMask mask = RoiMask::full(w, h);
    const double a = rng.range(0.1, 4.0), b = rng.range(-10.0, 10.0);
    GrayImage2D scaled = img;
    for (double& v : scaled.pixels) v = a * v + b;
    const auto r1 = discretize_fixed_levels(img, mask, 16);
    const auto r2 = discretize_fixed_levels(scaled, mask, 16);
    CHECK(r1.levels == r2.levels);
  }
}

TEST_CASE("min_max_normalize") {
  GrayImage2D img = GrayImage2D::filled(3, 1, 0.0);
  img.at(0, 0) = 0.0;
  img.at(0, 1) = 5.0;
  img.at(0, 2) = 10.0;
  auto out = min_max_normalize(img);
  CHECK(out.at(0, 0) == 0.0);
  CHECK(out.at(0, 1) == 0.5);
  CHECK(out.at(0, 2) == 1.0);

  img.at(0, 0) = -2.0;
  img.at(0, 1) = 0.0;
  img.at(0, 2) = 2.0;
  out = min_max_normalize(img);
  CHECK(out.at(0, 0) == 0.0);
  CHECK(out.at(0, 1) == 0.5);
  CHECK(out.at(0, 2) == 1.0);

  const auto flat = min_max_normalize(GrayImage2D::filled(4, 4, 9.0));
  for (double v : flat.pixels) CHECK(v == 0.0);
}

TEST_CASE("png round trip, 8-bit") {
  const auto dir = std::filesystem::temp_directory_path() / "radex_png_test";
  std::filesystem::create_directories(dir);
  Rng rng(23);
  GrayImage2D img = GrayImage2D::filled(9, 7, 0.0);
  for (double& v : img.pixels) v = static_cast<double>(rng.below(256));

  const auto path = dir / "t8.png";
  write_gray_png8(path, img);
  const auto back = read_gray_png(path);
  CHECK(back.width == img.width);
  CHECK(back.height == img.height);
  CHECK(back.pixels == img.pixels);

  // mask semantics: any nonzero byte is true
  const auto mask = read_mask_png(path);
  std::size_t nonzero = 0;
  for (double v : img.pixels) nonzero += v != 0.0;
  CHECK(mask.count_true() == nonzero);
  std::filesystem::remove_all(dir);
}

TEST_CASE("png: 16-bit grayscale values decode exactly") {
  const auto img = read_gray_png(std::filesystem::path(RADEX_FIXTURE_DIR) /
                                 "gray16.png");
  REQUIRE(img.width == 4);
  REQUIRE(img.height == 3);
  const std::vector<double> expected{0,     1,     257,   4660, 65535, 32768,
                                     256,   2,     513,   1027, 65280, 255};
  CHECK(img.pixels == expected);
}

TEST_CASE("png: missing and non-png files are rejected") {
  CHECK_THROWS_AS(read_gray_png("/nonexistent/file.png"), Error);
  const auto dir = std::filesystem::temp_directory_path() / "radex_png_bad";
  std::filesystem::create_directories(dir);
  const auto path = dir / "not_a_png.png";
  {
    std::ofstream out(path);
    out << "plain text";
  }
  CHECK_THROWS_AS(read_gray_png(path), Error);
  std::filesystem::remove_all(dir);
}
