#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "radex/error.hpp"
#include "radex/haar.hpp"
#include "radex/rng.hpp"
#include "synth.hpp"

using namespace radex;
using namespace radex::imaging;
using namespace radex::wavelet;

namespace {

double sum_squares(const GrayImage2D& img) {
  double s = 0;
  for (double v : img.pixels) s += v * v;
  return s;
}

double subband_energy(const HaarSubbands& b) {
  return sum_squares(b.ll) + sum_squares(b.lh) + sum_squares(b.hl) +
         sum_squares(b.hh);
}

}  // namespace

TEST_CASE("haar: constant image") {
  const auto bands = haar_decompose(GrayImage2D::filled(4, 6, 3.0));
  CHECK(bands.ll.width == 2);
  CHECK(bands.ll.height == 3);
  for (double v : bands.ll.pixels) CHECK(v == doctest::Approx(6.0).epsilon(1e-12));
  for (double v : bands.lh.pixels) CHECK(std::abs(v) < 1e-12);
  for (double v : bands.hl.pixels) CHECK(std::abs(v) < 1e-12);
  for (double v : bands.hh.pixels) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("haar: 2x2 stencil values") {
  GrayImage2D img = GrayImage2D::filled(2, 2, 0.0);
  img.at(0, 0) = 1;
  img.at(0, 1) = 2;
  img.at(1, 0) = 3;
  img.at(1, 1) = 4;
  const auto b = haar_decompose(img);
  REQUIRE(b.ll.pixels.size() == 1);
  CHECK(b.ll.at(0, 0) == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(b.lh.at(0, 0) == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(b.hl.at(0, 0) == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(b.hh.at(0, 0) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("haar: horizontal ramp has zero vertical detail") {
  GrayImage2D img = GrayImage2D::filled(6, 4, 0.0);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 6; ++c) img.at(r, c) = c;  // varies along x only
  const auto b = haar_decompose(img);
  for (double v : b.hl.pixels) CHECK(std::abs(v) < 1e-12);
  for (double v : b.hh.pixels) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("haar: too-small inputs rejected") {
  CHECK_THROWS_AS(haar_decompose(GrayImage2D::filled(1, 5, 1.0)), Error);
  CHECK_THROWS_AS(haar_decompose(GrayImage2D::filled(5, 1, 1.0)), Error);
}

TEST_CASE("haar: parseval on random even-dimension images") {
  Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const int h = 2 * (1 + static_cast<int>(rng.below(32)));
    const int w = 2 * (1 + static_cast<int>(rng.below(32)));
    const auto img = synth::random_image(rng, h, w, -2.0, 2.0);
    const double before = sum_squares(img);
    const double after = subband_energy(haar_decompose(img));
    CHECK(after == doctest::Approx(before).epsilon(1e-9));
  }
}

TEST_CASE("haar: odd dimensions replicate edges, sizes are ceil(dim/2)") {
  Rng rng(31);
  const auto img = synth::random_image(rng, 5, 7);
  const auto b = haar_decompose(img);
  CHECK(b.ll.height == 3);
  CHECK(b.ll.width == 4);

  // replicated row/col behave as if duplicated before filtering
  GrayImage2D padded = GrayImage2D::filled(8, 6, 0.0);
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 8; ++c)
      padded.at(r, c) = img.at(std::min(r, 4), std::min(c, 6));
  const auto bp = haar_decompose(padded);
  CHECK(b.ll.pixels == bp.ll.pixels);
  CHECK(b.hh.pixels == bp.hh.pixels);
}

TEST_CASE("haar: linearity") {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int h = 2 + static_cast<int>(rng.below(20));
    const int w = 2 + static_cast<int>(rng.below(20));
    const auto x = synth::random_image(rng, h, w, -1.0, 1.0);
    const auto y = synth::random_image(rng, h, w, -1.0, 1.0);
    const double a = rng.range(-2.0, 2.0), b = rng.range(-2.0, 2.0);
    GrayImage2D mix = x;
    for (std::size_t i = 0; i < mix.pixels.size(); ++i)
      mix.pixels[i] = a * x.pixels[i] + b * y.pixels[i];

    const auto bx = haar_decompose(x);
    const auto by = haar_decompose(y);
    const auto bm = haar_decompose(mix);
    for (std::size_t i = 0; i < bm.ll.pixels.size(); ++i) {
      CHECK(bm.ll.pixels[i] ==
            doctest::Approx(a * bx.ll.pixels[i] + b * by.ll.pixels[i])
                .epsilon(1e-9));
      CHECK(bm.hh.pixels[i] ==
            doctest::Approx(a * bx.hh.pixels[i] + b * by.hh.pixels[i])
                .epsilon(1e-9));
    }
  }
}

TEST_CASE("mask downsampling: majority with ties true") {
  RoiMask mask = RoiMask::empty(4, 4);
  // block (0,0): 2 of 4 -> tie -> true
  mask.set(0, 0, true);
  mask.set(1, 1, true);
  // block (0,1): 1 of 4 -> false
  mask.set(0, 2, true);
  // block (1,0): 3 of 4 -> true
  mask.set(2, 0, true);
  mask.set(2, 1, true);
  mask.set(3, 0, true);
  const auto half = wavelet::downsample_mask_majority(mask);
  CHECK(half.at(0, 0));
  CHECK_FALSE(half.at(0, 1));
  CHECK(half.at(1, 0));
  CHECK_FALSE(half.at(1, 1));

  // odd edge: single-cell block keeps its value
  RoiMask odd = RoiMask::empty(3, 3);
  odd.set(2, 2, true);
  const auto ho = wavelet::downsample_mask_majority(odd);
  CHECK(ho.width == 2);
  CHECK(ho.height == 2);
  CHECK(ho.at(1, 1));
}
