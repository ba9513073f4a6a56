#include "synth.hpp"

#include <algorithm>
#include <cmath>

#include "radex/manifest.hpp"
#include "radex/png_io.hpp"

namespace synth {

using radex::Rng;
using radex::imaging::DiscretizedRoi;
using radex::imaging::GrayImage2D;
using radex::imaging::RoiMask;
using radex::tabular::FeatureMatrix;

DiscretizedRoi random_roi(Rng& rng, int height, int width, int ng,
                          double hole_prob) {
  DiscretizedRoi roi;
  roi.ng = ng;
  roi.mask = RoiMask::empty(width, height);
  roi.levels.assign(static_cast<std::size_t>(width) * height, 0);
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) {
      if (rng.unit() < hole_prob) continue;
      roi.mask.set(r, c, true);
      roi.levels[static_cast<std::size_t>(r) * width + c] =
          1 + static_cast<int>(rng.below(ng));
    }
  if (roi.mask.count_true() == 0) {
    const int r = static_cast<int>(rng.below(height));
    const int c = static_cast<int>(rng.below(width));
    roi.mask.set(r, c, true);
    roi.levels[static_cast<std::size_t>(r) * width + c] =
        1 + static_cast<int>(rng.below(ng));
  }
  return roi;
}

GrayImage2D random_image(Rng& rng, int height, int width, double lo,
                         double hi) {
  GrayImage2D img = GrayImage2D::filled(width, height, 0.0);
  for (double& v : img.pixels) v = rng.range(lo, hi);
  return img;
}

FeatureMatrix separable_dataset(std::size_t n_samples, std::size_t n_noise,
                                std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> ids;
  std::vector<int> labels;
  std::vector<std::string> cols{"signal"};
  for (std::size_t f = 0; f < n_noise; ++f)
    cols.push_back("noise" + std::to_string(f));
  std::vector<double> values;
  for (std::size_t s = 0; s < n_samples; ++s) {
    ids.push_back("s" + std::to_string(s));
    const int label = static_cast<int>(s % 2);
    labels.push_back(label);
    values.push_back(label == 1 ? rng.range(1.0, 2.0) : rng.range(-2.0, -1.0));
    for (std::size_t f = 0; f < n_noise; ++f) values.push_back(rng.normal());
  }
  return FeatureMatrix::create(std::move(ids), std::move(cols),
                               std::move(values), std::move(labels));
}

FeatureMatrix shuffle_labels(const FeatureMatrix& m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> labels = m.require_labels();
  rng.shuffle(labels);
  return FeatureMatrix::create(m.sample_ids(), m.columns(), m.values(),
                               std::move(labels));
}

FeatureMatrix xor_dataset(std::size_t cluster_size, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> ids;
  std::vector<int> labels;
  std::vector<double> values;
  std::size_t s = 0;
  for (int qx = 0; qx < 2; ++qx)
    for (int qy = 0; qy < 2; ++qy)
      for (std::size_t i = 0; i < cluster_size; ++i) {
        ids.push_back("s" + std::to_string(s++));
        labels.push_back(qx ^ qy);
        values.push_back((qx ? 1.0 : -1.0) + 0.2 * rng.normal());
        values.push_back((qy ? 1.0 : -1.0) + 0.2 * rng.normal());
      }
  return FeatureMatrix::create(std::move(ids), {"x", "y"}, std::move(values),
                               std::move(labels));
}

PlantedCorrelation planted_correlation_dataset(std::size_t n_samples,
                                               std::size_t a, std::size_t b,
                                               std::size_t planted,
                                               std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> ids;
  for (std::size_t s = 0; s < n_samples; ++s)
    ids.push_back("s" + std::to_string(s));

  auto colname = [](const char* prefix, std::size_t i) {
    return std::string(prefix) + (i < 10 ? "0" : "") + std::to_string(i);
  };

  std::vector<std::vector<double>> r_cols(a), d_cols(b);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t s = 0; s < n_samples; ++s)
      r_cols[i].push_back(rng.range(-3.0, 3.0));

  PlantedCorrelation out;
  // strictly increasing transforms guarantee rank correlation exactly 1
  const auto transforms = std::vector<double (*)(double)>{
      [](double x) { return std::exp(0.5 * x); },
      [](double x) { return x * x * x; },
      [](double x) { return 2.0 * x + 1.0; },
  };
  for (std::size_t j = 0; j < b; ++j) {
    if (j < planted) {
      const std::size_t src = j;  // distinct radiomic source per planted pair
      d_cols[j].reserve(n_samples);
      for (double v : r_cols[src])
        d_cols[j].push_back(transforms[j % transforms.size()](v));
      out.pairs.emplace_back(src, j);
    } else {
      for (std::size_t s = 0; s < n_samples; ++s)
        d_cols[j].push_back(rng.normal());
    }
  }

  std::vector<std::string> r_names, d_names;
  std::vector<double> r_vals, d_vals;
  for (std::size_t i = 0; i < a; ++i) r_names.push_back(colname("r", i));
  for (std::size_t j = 0; j < b; ++j) d_names.push_back(colname("d", j));
  for (std::size_t s = 0; s < n_samples; ++s) {
    for (std::size_t i = 0; i < a; ++i) r_vals.push_back(r_cols[i][s]);
    for (std::size_t j = 0; j < b; ++j) d_vals.push_back(d_cols[j][s]);
  }
  out.radiomic = FeatureMatrix::create(ids, std::move(r_names),
                                       std::move(r_vals));
  out.deep = FeatureMatrix::create(ids, std::move(d_names), std::move(d_vals));
  return out;
}

namespace {

GrayImage2D render_sample(Rng& rng, int size, int label) {
  GrayImage2D img = GrayImage2D::filled(size, size, 0.0);
  const double cx = size / 2.0 + rng.range(-2.0, 2.0);
  const double cy = size / 2.0 + rng.range(-2.0, 2.0);
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) {
      const double d = std::hypot(r - cy, c - cx) / size;
      double v;
      if (label == 0) {
        // smooth radial blob
        v = 200.0 * std::exp(-6.0 * d * d) + 20.0 + 8.0 * rng.unit();
      } else {
        // speckled texture with structure
        const double speckle = rng.unit() < 0.5 ? 40.0 : 190.0;
        v = speckle * std::exp(-3.0 * d * d) + 30.0 * rng.unit();
      }
      img.at(r, c) = std::clamp(v, 0.0, 255.0);
    }
  return img;
}

RoiMask render_mask(Rng& rng, int size) {
  RoiMask mask = RoiMask::empty(size, size);
  const double ry = size * rng.range(0.28, 0.38);
  const double rx = size * rng.range(0.28, 0.38);
  const double cy = size / 2.0, cx = size / 2.0;
  for (int r = 0; r < size; ++r)
    for (int c = 0; c < size; ++c) {
      const double dy = (r - cy) / ry, dx = (c - cx) / rx;
      if (dy * dy + dx * dx <= 1.0) mask.set(r, c, true);
    }
  return mask;
}

}  // namespace

std::filesystem::path write_png_dataset(const std::filesystem::path& dir,
                                        std::size_t per_class, int size,
                                        std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  Rng rng(seed);
  std::vector<radex::ManifestRow> rows;
  std::size_t index = 0;
  for (int label = 0; label < 2; ++label)
    for (std::size_t i = 0; i < per_class; ++i) {
      const std::string id = "case" + std::to_string(index++);
      const auto image_path = dir / (id + ".png");
      const auto mask_path = dir / (id + "_mask.png");
      radex::imaging::write_gray_png8(image_path, render_sample(rng, size, label));
      radex::imaging::write_gray_png8(mask_path, [&] {
        const RoiMask m = render_mask(rng, size);
        GrayImage2D img = GrayImage2D::filled(m.width, m.height, 0.0);
        for (std::size_t p = 0; p < m.bits.size(); ++p)
          img.pixels[p] = m.bits[p] ? 255.0 : 0.0;
        return img;
      }());
      radex::ManifestRow row;
      row.sample_id = id;
      row.image_path = image_path.filename();
      row.mask_path = mask_path.filename();
      row.label = label;
      rows.push_back(row);
    }
  const auto manifest_path = dir / "manifest.csv";
  radex::write_manifest(manifest_path, rows);
  return manifest_path;
}

void write_deep_csv(const std::filesystem::path& radiomic_csv,
                    const std::filesystem::path& out_csv, std::size_t n_noise,
                    std::uint64_t seed) {
  const auto radiomic = radex::tabular::read_feature_csv(radiomic_csv);
  Rng rng(seed);
  const std::size_t n = radiomic.n_samples();

  std::vector<std::string> cols;
  std::vector<std::vector<double>> data;
  // three monotone echoes of early radiomic columns, then noise
  const std::size_t planted = std::min<std::size_t>(3, radiomic.n_features());
  for (std::size_t j = 0; j < planted; ++j) {
    const auto src = radiomic.column(j * 7 % radiomic.n_features());
    std::vector<double> col;
    for (double v : src) col.push_back(std::atan(v) * 2.0 + 5.0);
    cols.push_back("deep" + std::to_string(j));
    data.push_back(std::move(col));
  }
  for (std::size_t j = 0; j < n_noise; ++j) {
    std::vector<double> col;
    for (std::size_t s = 0; s < n; ++s) col.push_back(rng.normal());
    cols.push_back("deep" + std::to_string(planted + j));
    data.push_back(std::move(col));
  }

  std::vector<double> values;
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& col : data) values.push_back(col[s]);
  const auto deep = FeatureMatrix::create(radiomic.sample_ids(),
                                          std::move(cols), std::move(values));
  radex::tabular::write_feature_csv(out_csv, deep);
}

}  // namespace synth
