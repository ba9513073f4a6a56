// Wall-time comparison of the serial reference paths against the OpenMP
// kernels: Spearman correlation matrix, random-forest training, and batch
// feature extraction. Sizes are chosen so a run finishes in well under a
// minute on a laptop.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <omp.h>

#include "radex/explain.hpp"
#include "radex/feature_matrix.hpp"
#include "radex/features.hpp"
#include "radex/forest.hpp"
#include "radex/image.hpp"
#include "radex/parallel.hpp"
#include "radex/rng.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

radex::tabular::FeatureMatrix random_matrix(std::size_t n, std::size_t p,
                                            std::uint64_t seed,
                                            bool labeled) {
  radex::Rng rng(seed);
  std::vector<std::string> ids, cols;
  std::vector<double> values;
  std::optional<std::vector<int>> labels;
  if (labeled) labels.emplace();
  for (std::size_t s = 0; s < n; ++s) {
    ids.push_back("s" + std::to_string(s));
    if (labeled) labels->push_back(static_cast<int>(s % 2));
  }
  for (std::size_t f = 0; f < p; ++f) cols.push_back("f" + std::to_string(f));
  for (std::size_t i = 0; i < n * p; ++i) values.push_back(rng.normal());
  return radex::tabular::FeatureMatrix::create(ids, cols, values,
                                               std::move(labels));
}

template <typename Fn>
double time_run(Fn&& fn) {
  const auto start = Clock::now();
  fn();
  return seconds_since(start);
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.3fs %10.3fs %9.2fx\n", name, serial, parallel,
              serial / parallel);
}

}  // namespace

int main() {
  std::printf("threads available: %d\n\n", omp_get_max_threads());
  std::printf("%-28s %11s %11s %10s\n", "kernel", "serial", "openmp",
              "speedup");

  {
    const auto radiomic = random_matrix(300, 250, 1, false);
    const auto deep = random_matrix(300, 250, 2, false);
    const double s = time_run([&] {
      radex::xai::correlation_matrix_serial(radiomic, deep);
    });
    const double p = time_run([&] {
      radex::xai::correlation_matrix(radiomic, deep, 0);
    });
    row("correlation_matrix", s, p);
  }

  {
    const auto data = random_matrix(600, 24, 3, true);
    const radex::learn::ForestParams params{400, 7};
    const double s = time_run([&] {
      radex::learn::rf_train_serial(data, params);
    });
    const double p = time_run([&] { radex::learn::rf_train(data, params, 0); });
    row("rf_train", s, p);
  }

  {
    radex::Rng rng(11);
    std::vector<radex::imaging::GrayImage2D> images;
    std::vector<radex::imaging::RoiMask> masks;
    for (int i = 0; i < 48; ++i) {
      radex::imaging::GrayImage2D img =
          radex::imaging::GrayImage2D::filled(96, 96, 0.0);
      for (double& v : img.pixels) v = rng.range(0.0, 255.0);
      images.push_back(std::move(img));
      masks.push_back(radex::imaging::RoiMask::full(96, 96));
    }
    const radex::radiomics::ExtractConfig cfg{255, 0};
    auto batch = [&](int jobs) {
      std::vector<radex::radiomics::FeatureVector> out(images.size());
      radex::parallel_for(images.size(), jobs, [&](std::size_t i) {
        out[i] = radex::radiomics::extract_all(images[i], masks[i], cfg);
      });
    };
    const double s = time_run([&] { batch(1); });
    const double p = time_run([&] { batch(0); });
    row("extract_batch", s, p);
  }

  return 0;
}
