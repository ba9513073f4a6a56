#pragma once

#include <optional>
#include <span>
#include <vector>

namespace radex::cam {

/// K stacked H x W feature maps (activations or gradients), row-major with
/// k outermost. Values are finite; K >= 1.
struct TensorStack {
  int k = 0;
  int h = 0;
  int w = 0;
  std::vector<double> data;

  double at(int map, int row, int col) const {
    return data[(static_cast<std::size_t>(map) * h + row) * w + col];
  }
  double& at(int map, int row, int col) {
    return data[(static_cast<std::size_t>(map) * h + row) * w + col];
  }
  void validate() const;
};

/// Normalized 2D importance map: values in [0, 1], maximum exactly 1
/// unless the map is all-zero.
struct SaliencyMap {
  int h = 0;
  int w = 0;
  std::vector<double> values;

  double at(int row, int col) const {
    return values[static_cast<std::size_t>(row) * w + col];
  }
};

/// Gradient-weighted map: per-map weight = global average of its gradients,
/// raw map = ReLU(sum_k weight_k * A_k), then max-normalized.
SaliencyMap grad_cam(const TensorStack& activations,
                     const TensorStack& gradients);

/// Weight-combined map with ingested channel weights (not computed here;
/// obtaining them needs model forward passes). Optional softmax over the
/// weights for comparison with implementations that apply one.
SaliencyMap score_cam(const TensorStack& activations,
                      std::span<const double> weights, bool softmax = false);

/// Principal-component map: reshape the stack to (H*W) x K, project onto
/// the first right-singular direction (equivalently, the first left-
/// singular vector scaled by sigma_1), fix the sign so the map sums to a
/// nonnegative value, clamp negatives to zero, max-normalize. A zero stack
/// yields a zero map.
SaliencyMap eigen_cam(const TensorStack& activations);

/// Corner-aligned bilinear upsampling followed by re-normalization.
SaliencyMap upsample_bilinear(const SaliencyMap& map, int out_h, int out_w);

/// Agreement measures between two maps: Pearson correlation of the
/// flattened values (nullopt when either map is constant) and Jaccard
/// overlap of the top ceil(q * H * W) pixel sets, ties broken by row-major
/// index.
struct Discrepancy {
  std::optional<double> pearson;
  double top_q_jaccard = 0.0;
  double q = 0.0;
};

Discrepancy map_discrepancy(const SaliencyMap& a, const SaliencyMap& b,
                            double q);

}  // namespace radex::cam
