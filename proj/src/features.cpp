#include "radex/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "radex/error.hpp"
#include "radex/haar.hpp"

namespace radex::radiomics {

namespace {

constexpr double kCoarsenessCap = 1e6;

double log2_safe(double p) { return p > 0.0 ? std::log2(p) : 0.0; }

struct FeatureDef {
  const char* base;
  const char* formula;
};

// Per-category feature tables, alphabetical by base name. These are the
// single source of truth for both the dictionary and the emitted values.
const std::vector<FeatureDef>& shape_defs() {
  static const std::vector<FeatureDef> defs{
      {"Elongation", "sqrt(lambda_minor / lambda_major); 1 if degenerate"},
      {"MajorAxisLength", "4 * sqrt(lambda_major of pixel-center covariance)"},
      {"MaximumDiameter", "max pairwise distance between in-mask pixel centers"},
      {"MinorAxisLength", "4 * sqrt(lambda_minor of pixel-center covariance)"},
      {"Perimeter", "exposed 4-neighbor edge count * spacing"},
      {"PixelSurface", "in-mask pixel count * spacing^2"},
      {"Sphericity", "2 * sqrt(pi * PixelSurface) / Perimeter"},
  };
  return defs;
}

const std::vector<FeatureDef>& firstorder_defs() {
  static const std::vector<FeatureDef> defs{
      {"Energy", "sum(x^2)"},
      {"Entropy", "-sum(q * log2 q) over the discretized histogram"},
      {"Kurtosis", "m4 / m2^2 (non-excess; 3 for zero variance)"},
      {"Maximum", "max(x)"},
      {"Mean", "mean(x)"},
      {"Median", "median(x); even counts average the middle pair"},
      {"Minimum", "min(x)"},
      {"Range", "max(x) - min(x)"},
      {"RootMeanSquared", "sqrt(mean(x^2))"},
      {"Skewness", "m3 / m2^1.5 (0 for zero variance)"},
      {"TotalEnergy", "spacing^2 * sum(x^2)"},
      {"Uniformity", "sum(q^2) over the discretized histogram"},
      {"Variance", "population variance"},
  };
  return defs;
}

const std::vector<FeatureDef>& glcm_defs() {
  static const std::vector<FeatureDef> defs{
      {"Contrast", "sum((i-j)^2 * p(i,j))"},
      {"Correlation",
       "(sum(i*j*p) - mu_i*mu_j) / (sigma_i*sigma_j); 1 if sigma = 0"},
      {"InverseDifference", "sum(p / (1 + |i-j|))"},
      {"InverseDifferenceMoment", "sum(p / (1 + (i-j)^2))"},
      {"JointEnergy", "sum(p^2)"},
      {"JointEntropy", "-sum(p * log2 p)"},
  };
  return defs;
}

const std::vector<FeatureDef>& glrlm_defs() {
  static const std::vector<FeatureDef> defs{
      {"GrayLevelNonUniformity", "sum_g (sum_l R)^2 / Nruns"},
      {"LongRunEmphasis", "sum(R * l^2) / Nruns"},
      {"RunLengthNonUniformity", "sum_l (sum_g R)^2 / Nruns"},
      {"RunPercentage", "Nruns / (Npixels * Ndirections)"},
      {"ShortRunEmphasis", "sum(R / l^2) / Nruns"},
  };
  return defs;
}

const std::vector<FeatureDef>& glszm_defs() {
  static const std::vector<FeatureDef> defs{
      {"GrayLevelNonUniformity", "sum_g (sum_z S)^2 / Nzones"},
      {"LargeAreaEmphasis", "sum(S * z^2) / Nzones"},
      {"SizeZoneNonUniformity", "sum_z (sum_g S)^2 / Nzones"},
      {"SmallAreaEmphasis", "sum(S / z^2) / Nzones"},
      {"ZonePercentage", "Nzones / Npixels"},
  };
  return defs;
}

const std::vector<FeatureDef>& gldm_defs() {
  static const std::vector<FeatureDef> defs{
      {"DependenceEntropy", "-sum((D/Np) * log2(D/Np))"},
      {"DependenceNonUniformity", "sum_k (sum_g D)^2 / Npixels"},
      {"LargeDependenceEmphasis", "sum(D * (k+1)^2) / Npixels"},
      {"SmallDependenceEmphasis", "sum(D / (k+1)^2) / Npixels"},
  };
  return defs;
}

const std::vector<FeatureDef>& ngtdm_defs() {
  static const std::vector<FeatureDef> defs{
      {"Busyness", "sum(p*s) / sum_{i,j}|i*p_i - j*p_j|; 0 if denominator 0"},
      {"Coarseness", "1 / sum(p*s); capped at 1e6"},
      {"Complexity",
       "(1/Nvp) * sum_{i,j} |i-j| * (p_i*s_i + p_j*s_j)/(p_i + p_j)"},
      {"Contrast",
       "(1/(Ngp*(Ngp-1)) * sum p_i*p_j*(i-j)^2) * (mean of s); 0 if Ngp = 1"},
      {"Strength", "sum((p_i+p_j)*(i-j)^2) / sum(s); 0 if sum(s) = 0"},
  };
  return defs;
}

const std::vector<FeatureDef>& defs_for(Category c) {
  switch (c) {
    case Category::shape2d:
      return shape_defs();
    case Category::firstorder:
      return firstorder_defs();
    case Category::glcm:
      return glcm_defs();
    case Category::glrlm:
      return glrlm_defs();
    case Category::glszm:
      return glszm_defs();
    case Category::gldm:
      return gldm_defs();
    case Category::ngtdm:
      return ngtdm_defs();
  }
  fail(ErrorKind::BadArgument, "unknown category");
}

}  // namespace

const char* to_string(Category c) {
  switch (c) {
    case Category::shape2d:
      return "shape2d";
    case Category::firstorder:
      return "firstorder";
    case Category::glcm:
      return "glcm";
    case Category::glrlm:
      return "glrlm";
    case Category::glszm:
      return "glszm";
    case Category::gldm:
      return "gldm";
    case Category::ngtdm:
      return "ngtdm";
  }
  return "?";
}

const char* to_string(Source s) {
  switch (s) {
    case Source::original:
      return "original";
    case Source::waveletLL:
      return "waveletLL";
    case Source::waveletLH:
      return "waveletLH";
    case Source::waveletHL:
      return "waveletHL";
    case Source::waveletHH:
      return "waveletHH";
  }
  return "?";
}

Category category_from_string(const std::string& s) {
  for (Category c : {Category::shape2d, Category::firstorder, Category::glcm,
                     Category::glrlm, Category::glszm, Category::gldm,
                     Category::ngtdm})
    if (s == to_string(c)) return c;
  fail(ErrorKind::UnresolvableName, "unknown feature category '" + s + "'");
}

Source source_from_string(const std::string& s) {
  for (Source src : {Source::original, Source::waveletLL, Source::waveletLH,
                     Source::waveletHL, Source::waveletHH})
    if (s == to_string(src)) return src;
  fail(ErrorKind::UnresolvableName, "unknown feature source '" + s + "'");
}

std::string FeatureDescriptor::full_name() const {
  return std::string(to_string(source)) + "_" + to_string(category) + "_" +
         base_name;
}

std::string FeatureDescriptor::group_key() const {
  return std::string(to_string(category)) + "_" + base_name;
}

FeatureDescriptor parse_feature_name(const std::string& name) {
  const auto p1 = name.find('_');
  const auto p2 = p1 == std::string::npos ? p1 : name.find('_', p1 + 1);
  if (p2 == std::string::npos || p2 + 1 >= name.size())
    fail(ErrorKind::UnresolvableName,
         "feature name '" + name + "' is not <source>_<category>_<base>");
  FeatureDescriptor d;
  d.source = source_from_string(name.substr(0, p1));
  d.category = category_from_string(name.substr(p1 + 1, p2 - p1 - 1));
  d.base_name = name.substr(p2 + 1);
  return d;
}

NamedValues glcm_features(const Glcm& m) {
  const int ng = m.ng;
  double joint_energy = 0.0, joint_entropy = 0.0, contrast = 0.0;
  double inv_diff = 0.0, inv_diff_moment = 0.0;
  double mean_i = 0.0, cross = 0.0;
  for (int i = 1; i <= ng; ++i)
    for (int j = 1; j <= ng; ++j) {
      const double p = m.at(i, j);
      if (p == 0.0) continue;
      joint_energy += p * p;
      joint_entropy -= p * log2_safe(p);
      contrast += static_cast<double>(i - j) * (i - j) * p;
      inv_diff += p / (1.0 + std::abs(i - j));
      inv_diff_moment += p / (1.0 + static_cast<double>(i - j) * (i - j));
      mean_i += i * p;
      cross += static_cast<double>(i) * j * p;
    }
  // the matrix is symmetric: both marginals share mean and variance
  double var_i = 0.0;
  for (int i = 1; i <= ng; ++i) {
    double row = 0.0;
    for (int j = 1; j <= ng; ++j) row += m.at(i, j);
    var_i += (i - mean_i) * (i - mean_i) * row;
  }
  const double correlation =
      var_i > 0.0 ? (cross - mean_i * mean_i) / var_i : 1.0;

  return {{"Contrast", contrast},
          {"Correlation", correlation},
          {"InverseDifference", inv_diff},
          {"InverseDifferenceMoment", inv_diff_moment},
          {"JointEnergy", joint_energy},
          {"JointEntropy", joint_entropy}};
}

NamedValues glrlm_features(const Glrlm& m) {
  const double nr = static_cast<double>(m.n_runs);
  double gln = 0.0, rlnu = 0.0, sre = 0.0, lre = 0.0;
  for (int g = 1; g <= m.ng; ++g) {
    double row = 0.0;
    for (int l = 1; l <= m.lmax; ++l) row += m.at(g, l);
    gln += row * row;
  }
  for (int l = 1; l <= m.lmax; ++l) {
    double col = 0.0;
    for (int g = 1; g <= m.ng; ++g) col += m.at(g, l);
    rlnu += col * col;
    sre += col / (static_cast<double>(l) * l);
    lre += col * static_cast<double>(l) * l;
  }
  const double rp =
      nr / (static_cast<double>(m.n_pixels) * m.n_directions);
  return {{"GrayLevelNonUniformity", gln / nr},
          {"LongRunEmphasis", lre / nr},
          {"RunLengthNonUniformity", rlnu / nr},
          {"RunPercentage", rp},
          {"ShortRunEmphasis", sre / nr}};
}

NamedValues glszm_features(const Glszm& m) {
  const double nz = static_cast<double>(m.n_zones);
  double gln = 0.0, sznu = 0.0, sae = 0.0, lae = 0.0;
  for (int g = 1; g <= m.ng; ++g) {
    double row = 0.0;
    for (int z = 1; z <= m.zmax; ++z) row += m.at(g, z);
    gln += row * row;
  }
  for (int z = 1; z <= m.zmax; ++z) {
    double col = 0.0;
    for (int g = 1; g <= m.ng; ++g) col += m.at(g, z);
    sznu += col * col;
    sae += col / (static_cast<double>(z) * z);
    lae += col * static_cast<double>(z) * z;
  }
  return {{"GrayLevelNonUniformity", gln / nz},
          {"LargeAreaEmphasis", lae / nz},
          {"SizeZoneNonUniformity", sznu / nz},
          {"SmallAreaEmphasis", sae / nz},
          {"ZonePercentage", nz / static_cast<double>(m.n_pixels)}};
}

NamedValues gldm_features(const Gldm& m) {
  const double np = static_cast<double>(m.n_pixels);
  double dnu = 0.0, entropy = 0.0, sde = 0.0, lde = 0.0;
  for (int k = 0; k <= 8; ++k) {
    double col = 0.0;
    for (int g = 1; g <= m.ng; ++g) col += m.at(g, k);
    dnu += col * col;
    // dependence size counts the center pixel itself
    const double size = k + 1.0;
    sde += col / (size * size);
    lde += col * size * size;
  }
  for (int g = 1; g <= m.ng; ++g)
    for (int k = 0; k <= 8; ++k) {
      const double q = m.at(g, k) / np;
      if (q > 0.0) entropy -= q * std::log2(q);
    }
  return {{"DependenceEntropy", entropy},
          {"DependenceNonUniformity", dnu / np},
          {"LargeDependenceEmphasis", lde / np},
          {"SmallDependenceEmphasis", sde / np}};
}

NamedValues ngtdm_features(const Ngtdm& m) {
  const int ng = m.ng;
  std::vector<int> occurring;
  for (int g = 1; g <= ng; ++g)
    if (m.p[g - 1] > 0.0) occurring.push_back(g);
  const double nvp = static_cast<double>(m.n_valid);
  const int ngp = static_cast<int>(occurring.size());

  double ps_sum = 0.0, s_sum = 0.0;
  for (int g : occurring) {
    ps_sum += m.p[g - 1] * m.s[g - 1];
    s_sum += m.s[g - 1];
  }

  const double coarseness = ps_sum > 0.0 ? 1.0 / ps_sum : kCoarsenessCap;

  double contrast = 0.0;
  if (ngp > 1 && nvp > 0.0) {
    double pair_term = 0.0;
    for (int i : occurring)
      for (int j : occurring)
        pair_term += m.p[i - 1] * m.p[j - 1] * (i - j) * (i - j);
    contrast = pair_term / (static_cast<double>(ngp) * (ngp - 1)) *
               (s_sum / nvp);
  }

  double busy_den = 0.0, complexity = 0.0, strength_num = 0.0;
  for (int i : occurring)
    for (int j : occurring) {
      busy_den += std::abs(i * m.p[i - 1] - j * m.p[j - 1]);
      complexity += std::abs(i - j) *
                    (m.p[i - 1] * m.s[i - 1] + m.p[j - 1] * m.s[j - 1]) /
                    (m.p[i - 1] + m.p[j - 1]);
      strength_num += (m.p[i - 1] + m.p[j - 1]) * (i - j) * (i - j);
    }
  const double busyness = busy_den > 0.0 ? ps_sum / busy_den : 0.0;
  complexity = nvp > 0.0 ? complexity / nvp : 0.0;
  const double strength = s_sum > 0.0 ? strength_num / s_sum : 0.0;

  return {{"Busyness", busyness},
          {"Coarseness", coarseness},
          {"Complexity", complexity},
          {"Contrast", contrast},
          {"Strength", strength}};
}

NamedValues first_order_features(const imaging::GrayImage2D& image,
                                 const imaging::RoiMask& mask,
                                 const imaging::DiscretizedRoi& roi) {
  if (image.width != mask.width || image.height != mask.height)
    fail(ErrorKind::DimensionMismatch, "image and mask dimensions differ");

  std::vector<double> x;
  x.reserve(mask.count_true());
  for (int r = 0; r < image.height; ++r)
    for (int c = 0; c < image.width; ++c)
      if (mask.at(r, c)) x.push_back(image.at(r, c));
  if (x.empty()) fail(ErrorKind::EmptyMask, "mask has no true pixel");
  const double n = static_cast<double>(x.size());

  double sum = 0.0, sumsq = 0.0;
  double lo = x[0], hi = x[0];
  for (double v : x) {
    sum += v;
    sumsq += v * v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double mean = sum / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : x) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  const double skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  const double kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 3.0;

  std::vector<double> sorted = x;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t half = sorted.size() / 2;
  const double median = sorted.size() % 2 == 1
                            ? sorted[half]
                            : 0.5 * (sorted[half - 1] + sorted[half]);

  // histogram statistics over discretized levels
  std::vector<std::size_t> counts(roi.ng, 0);
  for (int r = 0; r < roi.height(); ++r)
    for (int c = 0; c < roi.width(); ++c)
      if (roi.in_mask(r, c)) ++counts[roi.level_at(r, c) - 1];
  double entropy = 0.0, uniformity = 0.0;
  for (std::size_t count : counts) {
    if (count == 0) continue;
    const double q = static_cast<double>(count) / n;
    entropy -= q * std::log2(q);
    uniformity += q * q;
  }

  const double spacing = image.pixel_spacing;
  return {{"Energy", sumsq},
          {"Entropy", entropy},
          {"Kurtosis", kurtosis},
          {"Maximum", hi},
          {"Mean", mean},
          {"Median", median},
          {"Minimum", lo},
          {"Range", hi - lo},
          {"RootMeanSquared", std::sqrt(sumsq / n)},
          {"Skewness", skewness},
          {"TotalEnergy", spacing * spacing * sumsq},
          {"Uniformity", uniformity},
          {"Variance", m2}};
}

namespace {

// Convex hull (Andrew monotone chain) over candidate pixel centers; only
// hull vertices can realize the maximum pairwise distance.
std::vector<std::pair<double, double>> convex_hull(
    std::vector<std::pair<double, double>> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  std::vector<std::pair<double, double>> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin(); it != pts.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

NamedValues shape2d_features(const imaging::RoiMask& mask,
                             double pixel_spacing) {
  mask.validate();
  const std::size_t n = mask.count_true();
  if (n == 0) fail(ErrorKind::EmptyMask, "mask has no true pixel");
  const double s = pixel_spacing;

  // perimeter: count edges between an in-mask pixel and outside/masked-out
  std::size_t edge_count = 0;
  double sum_r = 0.0, sum_c = 0.0;
  std::vector<std::pair<double, double>> boundary;
  for (int r = 0; r < mask.height; ++r)
    for (int c = 0; c < mask.width; ++c) {
      if (!mask.at(r, c)) continue;
      sum_r += r;
      sum_c += c;
      int inside4 = 0;
      const int dr[4] = {-1, 1, 0, 0}, dc[4] = {0, 0, -1, 1};
      for (int k = 0; k < 4; ++k) {
        const int nr = r + dr[k], nc = c + dc[k];
        const bool in = nr >= 0 && nr < mask.height && nc >= 0 &&
                        nc < mask.width && mask.at(nr, nc);
        if (in)
          ++inside4;
        else
          ++edge_count;
      }
      if (inside4 < 4) boundary.emplace_back(c, r);
    }

  const double mean_r = sum_r / static_cast<double>(n);
  const double mean_c = sum_c / static_cast<double>(n);
  double cov_rr = 0.0, cov_cc = 0.0, cov_rc = 0.0;
  for (int r = 0; r < mask.height; ++r)
    for (int c = 0; c < mask.width; ++c) {
      if (!mask.at(r, c)) continue;
      const double dr = (r - mean_r) * s, dc = (c - mean_c) * s;
      cov_rr += dr * dr;
      cov_cc += dc * dc;
      cov_rc += dr * dc;
    }
  cov_rr /= static_cast<double>(n);
  cov_cc /= static_cast<double>(n);
  cov_rc /= static_cast<double>(n);

  const double tr = cov_rr + cov_cc;
  const double disc =
      std::sqrt((cov_rr - cov_cc) * (cov_rr - cov_cc) + 4.0 * cov_rc * cov_rc);
  const double lambda_major = std::max(0.0, (tr + disc) / 2.0);
  const double lambda_minor = std::max(0.0, (tr - disc) / 2.0);
  const double elongation =
      lambda_major > 0.0 ? std::sqrt(lambda_minor / lambda_major) : 1.0;

  double max_diam = 0.0;
  const auto hull = convex_hull(std::move(boundary));
  for (std::size_t i = 0; i < hull.size(); ++i)
    for (std::size_t j = i + 1; j < hull.size(); ++j) {
      const double dx = hull[i].first - hull[j].first;
      const double dy = hull[i].second - hull[j].second;
      max_diam = std::max(max_diam, dx * dx + dy * dy);
    }
  max_diam = std::sqrt(max_diam) * s;

  const double area = static_cast<double>(n) * s * s;
  const double perimeter = static_cast<double>(edge_count) * s;
  const double pi = 3.14159265358979323846;
  return {{"Elongation", elongation},
          {"MajorAxisLength", 4.0 * std::sqrt(lambda_major)},
          {"MaximumDiameter", max_diam},
          {"MinorAxisLength", 4.0 * std::sqrt(lambda_minor)},
          {"Perimeter", perimeter},
          {"PixelSurface", area},
          {"Sphericity", 2.0 * std::sqrt(pi * area) / perimeter}};
}

const std::vector<DictionaryEntry>& feature_dictionary() {
  static const std::vector<DictionaryEntry> dict = [] {
    std::vector<DictionaryEntry> entries;
    const Category cats[] = {Category::shape2d, Category::firstorder,
                             Category::glcm,    Category::glrlm,
                             Category::glszm,   Category::gldm,
                             Category::ngtdm};
    const Source all_sources[] = {Source::original, Source::waveletLL,
                                  Source::waveletLH, Source::waveletHL,
                                  Source::waveletHH};
    for (Category cat : cats) {
      for (const FeatureDef& def : defs_for(cat)) {
        if (cat == Category::shape2d) {
          entries.push_back(
              {{def.base, cat, Source::original}, def.formula});
        } else {
          for (Source src : all_sources)
            entries.push_back({{def.base, cat, src}, def.formula});
        }
      }
    }
    return entries;
  }();
  return dict;
}

std::vector<std::string> feature_names() {
  std::vector<std::string> names;
  names.reserve(feature_dictionary().size());
  for (const auto& e : feature_dictionary())
    names.push_back(e.descriptor.full_name());
  return names;
}

FeatureVector extract_all(const imaging::GrayImage2D& image,
                          const imaging::RoiMask& mask,
                          const ExtractConfig& config) {
  image.validate();
  mask.validate();
  if (image.width != mask.width || image.height != mask.height)
    fail(ErrorKind::DimensionMismatch, "image and mask dimensions differ");

  auto [cropped, cmask] = crop_to_bounding_box(image, mask);

  std::map<std::string, double> by_name;
  auto add = [&by_name](Source src, Category cat, const NamedValues& values) {
    for (const auto& [base, value] : values) {
      FeatureDescriptor d{base, cat, src};
      by_name[d.full_name()] = value;
    }
  };

  auto add_nonshape = [&](Source src, const imaging::GrayImage2D& img,
                          const imaging::RoiMask& m) {
    try {
      const auto roi = imaging::discretize_fixed_levels(img, m, config.ng);
      add(src, Category::firstorder, first_order_features(img, m, roi));
      add(src, Category::glcm, glcm_features(compute_glcm(roi)));
      add(src, Category::glrlm, glrlm_features(compute_glrlm(roi)));
      add(src, Category::glszm, glszm_features(compute_glszm(roi)));
      add(src, Category::gldm,
          gldm_features(compute_gldm(roi, config.gldm_alpha)));
      add(src, Category::ngtdm, ngtdm_features(compute_ngtdm(roi)));
    } catch (const Error& e) {
      throw Error(e.kind(), std::string(to_string(src)) + " features: " +
                                e.what());
    }
  };

  add(Source::original, Category::shape2d,
      shape2d_features(cmask, cropped.pixel_spacing));
  add_nonshape(Source::original, cropped, cmask);

  try {
    const auto bands = wavelet::haar_decompose(cropped);
    const auto half_mask = wavelet::downsample_mask_majority(cmask);
    add_nonshape(Source::waveletLL, bands.ll, half_mask);
    add_nonshape(Source::waveletLH, bands.lh, half_mask);
    add_nonshape(Source::waveletHL, bands.hl, half_mask);
    add_nonshape(Source::waveletHH, bands.hh, half_mask);
  } catch (const Error& e) {
    if (std::string(e.what()).rfind("wavelet", 0) == 0) throw;
    throw Error(e.kind(), std::string("wavelet features: ") + e.what());
  }

  FeatureVector out;
  for (const auto& entry : feature_dictionary()) {
    const std::string name = entry.descriptor.full_name();
    const auto it = by_name.find(name);
    if (it == by_name.end())
      fail(ErrorKind::MissingFeature, "feature not computed: " + name);
    out.names.push_back(name);
    out.values.push_back(it->second);
  }
  return out;
}

}  // namespace radex::radiomics
