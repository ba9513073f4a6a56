#include "radex/texture.hpp"

#include <algorithm>
#include <cmath>

#include "radex/error.hpp"

namespace radex::radiomics {

namespace {

void require_roi(const imaging::DiscretizedRoi& roi) {
  if (roi.ng < 1) fail(ErrorKind::BadArgument, "roi has Ng < 1");
  if (roi.mask.count_true() == 0)
    fail(ErrorKind::EmptyMask, "roi mask has no true pixel");
}

constexpr std::array<Offset, 8> kNeighbors8{{{-1, -1},
                                             {-1, 0},
                                             {-1, 1},
                                             {0, -1},
                                             {0, 1},
                                             {1, -1},
                                             {1, 0},
                                             {1, 1}}};

}  // namespace

Glcm compute_glcm(const imaging::DiscretizedRoi& roi,
                  std::span<const Offset> offsets) {
  require_roi(roi);
  const int h = roi.height(), w = roi.width(), ng = roi.ng;

  Glcm g;
  g.ng = ng;
  g.offsets.assign(offsets.begin(), offsets.end());
  g.symmetric = true;
  g.p.assign(static_cast<std::size_t>(ng) * ng, 0.0);

  double total = 0.0;
  for (const Offset& off : offsets) {
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) {
        const int r2 = r + off.dr, c2 = c + off.dc;
        if (r2 < 0 || r2 >= h || c2 < 0 || c2 >= w) continue;
        if (!roi.in_mask(r, c) || !roi.in_mask(r2, c2)) continue;
        const int a = roi.level_at(r, c), b = roi.level_at(r2, c2);
        // each pair enters in both orientations
        g.p[static_cast<std::size_t>(a - 1) * ng + (b - 1)] += 1.0;
        g.p[static_cast<std::size_t>(b - 1) * ng + (a - 1)] += 1.0;
        total += 2.0;
      }
  }
  if (total > 0.0)
    for (double& v : g.p) v /= total;
  return g;
}

Glrlm compute_glrlm(const imaging::DiscretizedRoi& roi,
                    std::span<const Offset> offsets) {
  require_roi(roi);
  const int h = roi.height(), w = roi.width();

  // First pass enumerates maximal runs; a run starts at a pixel whose
  // predecessor along the direction is missing (out of grid, out of mask,
  // or a different level).
  std::vector<std::pair<int, int>> runs;  // (level, length)
  int lmax = 1;
  for (const Offset& off : offsets) {
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c) {
        if (!roi.in_mask(r, c)) continue;
        const int level = roi.level_at(r, c);
        const int pr = r - off.dr, pc = c - off.dc;
        const bool has_pred = pr >= 0 && pr < h && pc >= 0 && pc < w &&
                              roi.in_mask(pr, pc) &&
                              roi.level_at(pr, pc) == level;
        if (has_pred) continue;
        int len = 1;
        int nr = r + off.dr, nc = c + off.dc;
        while (nr >= 0 && nr < h && nc >= 0 && nc < w && roi.in_mask(nr, nc) &&
               roi.level_at(nr, nc) == level) {
          ++len;
          nr += off.dr;
          nc += off.dc;
        }
        runs.emplace_back(level, len);
        lmax = std::max(lmax, len);
      }
  }

  Glrlm m;
  m.ng = roi.ng;
  m.lmax = lmax;
  m.n_runs = runs.size();
  m.n_pixels = roi.mask.count_true();
  m.n_directions = offsets.size();
  m.r.assign(static_cast<std::size_t>(roi.ng) * lmax, 0.0);
  for (const auto& [level, len] : runs)
    m.r[static_cast<std::size_t>(level - 1) * lmax + (len - 1)] += 1.0;
  return m;
}

Glszm compute_glszm(const imaging::DiscretizedRoi& roi) {
  require_roi(roi);
  const int h = roi.height(), w = roi.width();

  std::vector<std::uint8_t> seen(static_cast<std::size_t>(h) * w, 0);
  std::vector<std::pair<int, int>> zones;  // (level, size)
  std::vector<std::pair<int, int>> stack;
  int zmax = 1;

  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      const std::size_t idx = static_cast<std::size_t>(r) * w + c;
      if (!roi.in_mask(r, c) || seen[idx]) continue;
      const int level = roi.level_at(r, c);
      int size = 0;
      seen[idx] = 1;
      stack.clear();
      stack.emplace_back(r, c);
      while (!stack.empty()) {
        auto [cr, cc] = stack.back();
        stack.pop_back();
        ++size;
        for (const Offset& n : kNeighbors8) {
          const int nr = cr + n.dr, nc = cc + n.dc;
          if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
          const std::size_t nidx = static_cast<std::size_t>(nr) * w + nc;
          if (seen[nidx] || !roi.in_mask(nr, nc)) continue;
          if (roi.level_at(nr, nc) != level) continue;
          seen[nidx] = 1;
          stack.emplace_back(nr, nc);
        }
      }
      zones.emplace_back(level, size);
      zmax = std::max(zmax, size);
    }

  Glszm m;
  m.ng = roi.ng;
  m.zmax = zmax;
  m.n_zones = zones.size();
  m.n_pixels = roi.mask.count_true();
  m.s.assign(static_cast<std::size_t>(roi.ng) * zmax, 0.0);
  for (const auto& [level, size] : zones)
    m.s[static_cast<std::size_t>(level - 1) * zmax + (size - 1)] += 1.0;
  return m;
}

Gldm compute_gldm(const imaging::DiscretizedRoi& roi, int alpha) {
  require_roi(roi);
  if (alpha < 0) fail(ErrorKind::BadArgument, "gldm alpha must be >= 0");
  const int h = roi.height(), w = roi.width();

  Gldm m;
  m.ng = roi.ng;
  m.alpha = alpha;
  m.n_pixels = roi.mask.count_true();
  m.d.assign(static_cast<std::size_t>(roi.ng) * 9, 0.0);

  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      if (!roi.in_mask(r, c)) continue;
      const int level = roi.level_at(r, c);
      int dependent = 0;
      for (const Offset& n : kNeighbors8) {
        const int nr = r + n.dr, nc = c + n.dc;
        if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
        if (!roi.in_mask(nr, nc)) continue;
        if (std::abs(roi.level_at(nr, nc) - level) <= alpha) ++dependent;
      }
      m.d[static_cast<std::size_t>(level - 1) * 9 + dependent] += 1.0;
    }
  return m;
}

Ngtdm compute_ngtdm(const imaging::DiscretizedRoi& roi) {
  require_roi(roi);
  const int h = roi.height(), w = roi.width();

  Ngtdm m;
  m.ng = roi.ng;
  m.s.assign(roi.ng, 0.0);
  m.n.assign(roi.ng, 0);
  m.p.assign(roi.ng, 0.0);

  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) {
      if (!roi.in_mask(r, c)) continue;
      double sum = 0.0;
      int count = 0;
      for (const Offset& n : kNeighbors8) {
        const int nr = r + n.dr, nc = c + n.dc;
        if (nr < 0 || nr >= h || nc < 0 || nc >= w) continue;
        if (!roi.in_mask(nr, nc)) continue;
        sum += roi.level_at(nr, nc);
        ++count;
      }
      if (count == 0) continue;  // isolated pixel, no neighborhood
      const int level = roi.level_at(r, c);
      m.s[level - 1] += std::abs(level - sum / count);
      m.n[level - 1] += 1;
      ++m.n_valid;
    }

  if (m.n_valid > 0)
    for (int g = 0; g < roi.ng; ++g)
      m.p[g] = static_cast<double>(m.n[g]) / static_cast<double>(m.n_valid);
  return m;
}

}  // namespace radex::radiomics
