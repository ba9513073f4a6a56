#pragma once

#include <string>

#include "radex/image.hpp"

namespace radex::wavelet {

/// Four subbands of a single-level 2D Haar decomposition, each of size
/// ceil(height/2) x ceil(width/2). Naming: first letter is the vertical
/// filter, second the horizontal one (LH = low-pass down columns,
/// high-pass along rows).
struct HaarSubbands {
  imaging::GrayImage2D ll, lh, hl, hh;
  std::string origin;  // source image id, informational
};

/// Single-level separable Haar decomposition with orthonormal filters
/// low = (1/sqrt2, 1/sqrt2), high = (1/sqrt2, -1/sqrt2), stride 2, columns
/// filtered before rows. Odd dimensions are edge-replicated by one pixel.
/// For even dimensions the transform is orthonormal, so the total sum of
/// squares is preserved. Throws TooSmall if either dimension is < 2.
HaarSubbands haar_decompose(const imaging::GrayImage2D& image,
                            std::string origin = {});

/// Downsamples a mask to the subband grid: each 2x2 block (smaller at odd
/// edges) votes by majority, ties counting as true.
imaging::RoiMask downsample_mask_majority(const imaging::RoiMask& mask);

}  // namespace radex::wavelet
