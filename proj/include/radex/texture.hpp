#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "radex/image.hpp"

namespace radex::radiomics {

/// Pixel displacement (row delta, column delta).
struct Offset {
  int dr = 0;
  int dc = 0;
};

/// The four distance-1 directions used by default for co-occurrence and
/// run-length statistics: right, down, down-right, down-left.
inline constexpr std::array<Offset, 4> kDefaultOffsets{
    {{0, 1}, {1, 0}, {1, 1}, {1, -1}}};

/// Normalized symmetric gray-level co-occurrence matrix. Entries sum to 1;
/// matrices for all offsets are accumulated before normalization.
struct Glcm {
  int ng = 0;
  std::vector<double> p;  // ng x ng, row-major, levels are 1-based
  std::vector<Offset> offsets;
  bool symmetric = true;

  double at(int level_i, int level_j) const {
    return p[static_cast<std::size_t>(level_i - 1) * ng + (level_j - 1)];
  }
};

/// Run-length counts R[g][l]: maximal runs of level g with length l, summed
/// over directions.
struct Glrlm {
  int ng = 0;
  int lmax = 0;
  std::vector<double> r;  // ng x lmax, lengths are 1-based
  std::size_t n_runs = 0;
  std::size_t n_pixels = 0;
  std::size_t n_directions = 0;

  double at(int level, int length) const {
    return r[static_cast<std::size_t>(level - 1) * lmax + (length - 1)];
  }
};

/// Size-zone counts S[g][z]: 8-connected zones of level g with size z.
struct Glszm {
  int ng = 0;
  int zmax = 0;
  std::vector<double> s;  // ng x zmax, sizes are 1-based
  std::size_t n_zones = 0;
  std::size_t n_pixels = 0;

  double at(int level, int size) const {
    return s[static_cast<std::size_t>(level - 1) * zmax + (size - 1)];
  }
};

/// Dependence counts D[g][k]: in-mask pixels of level g having k in-mask
/// 8-neighbors within the level tolerance alpha (k in 0..8).
struct Gldm {
  int ng = 0;
  int alpha = 0;
  std::vector<double> d;  // ng x 9
  std::size_t n_pixels = 0;

  double at(int level, int k) const {
    return d[static_cast<std::size_t>(level - 1) * 9 + k];
  }
};

/// Neighborhood gray-tone difference statistics. Only pixels with at least
/// one in-mask 8-neighbor participate; the neighborhood mean excludes the
/// center pixel.
struct Ngtdm {
  int ng = 0;
  std::vector<double> s;       // per level: sum of |level - neighborhood mean|
  std::vector<std::size_t> n;  // per level: participating pixel count
  std::vector<double> p;       // per level: n / total participating
  std::size_t n_valid = 0;     // total participating pixels
};

Glcm compute_glcm(const imaging::DiscretizedRoi& roi,
                  std::span<const Offset> offsets = kDefaultOffsets);

Glrlm compute_glrlm(const imaging::DiscretizedRoi& roi,
                    std::span<const Offset> offsets = kDefaultOffsets);

Glszm compute_glszm(const imaging::DiscretizedRoi& roi);

Gldm compute_gldm(const imaging::DiscretizedRoi& roi, int alpha = 0);

Ngtdm compute_ngtdm(const imaging::DiscretizedRoi& roi);

}  // namespace radex::radiomics
