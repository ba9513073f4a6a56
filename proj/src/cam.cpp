#include "radex/cam.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "radex/error.hpp"
#include "radex/stats.hpp"

namespace radex::cam {

void TensorStack::validate() const {
  if (k < 1 || h < 1 || w < 1)
    fail(ErrorKind::BadFormat, "tensor stack needs K, H, W >= 1");
  if (data.size() != static_cast<std::size_t>(k) * h * w)
    fail(ErrorKind::BadFormat, "tensor buffer does not match K x H x W");
  for (double v : data)
    if (!std::isfinite(v)) fail(ErrorKind::BadFormat, "non-finite tensor value");
}

namespace {

SaliencyMap max_normalize(int h, int w, std::vector<double> raw) {
  double peak = 0.0;
  for (double v : raw) peak = std::max(peak, v);
  if (peak > 0.0)
    for (double& v : raw) v /= peak;
  return {h, w, std::move(raw)};
}

SaliencyMap weighted_relu_combine(const TensorStack& a,
                                  std::span<const double> weights) {
  std::vector<double> raw(static_cast<std::size_t>(a.h) * a.w, 0.0);
  for (int m = 0; m < a.k; ++m)
    for (int r = 0; r < a.h; ++r)
      for (int c = 0; c < a.w; ++c)
        raw[static_cast<std::size_t>(r) * a.w + c] +=
            weights[m] * a.at(m, r, c);
  for (double& v : raw) v = std::max(v, 0.0);  // ReLU
  return max_normalize(a.h, a.w, std::move(raw));
}

}  // namespace

SaliencyMap grad_cam(const TensorStack& activations,
                     const TensorStack& gradients) {
  activations.validate();
  gradients.validate();
  if (activations.k != gradients.k || activations.h != gradients.h ||
      activations.w != gradients.w)
    fail(ErrorKind::ShapeMismatch,
         "activation and gradient stacks differ in shape");

  const double plane = static_cast<double>(activations.h) * activations.w;
  std::vector<double> weights(activations.k, 0.0);
  for (int m = 0; m < activations.k; ++m) {
    double sum = 0.0;
    for (int r = 0; r < activations.h; ++r)
      for (int c = 0; c < activations.w; ++c) sum += gradients.at(m, r, c);
    weights[m] = sum / plane;  // global average pooling
  }
  return weighted_relu_combine(activations, weights);
}

SaliencyMap score_cam(const TensorStack& activations,
                      std::span<const double> weights, bool softmax) {
  activations.validate();
  if (static_cast<int>(weights.size()) != activations.k)
    fail(ErrorKind::LengthMismatch,
         "weight count does not match activation map count");

  std::vector<double> w(weights.begin(), weights.end());
  if (softmax) {
    const double peak = *std::max_element(w.begin(), w.end());
    double total = 0.0;
    for (double& v : w) {
      v = std::exp(v - peak);
      total += v;
    }
    for (double& v : w) v /= total;
  }
  return weighted_relu_combine(activations, w);
}

SaliencyMap eigen_cam(const TensorStack& activations) {
  activations.validate();
  const int k = activations.k;
  const std::size_t plane =
      static_cast<std::size_t>(activations.h) * activations.w;

  // Gram matrix C = O^T O of the (H*W) x K column matrix O.
  std::vector<double> gram(static_cast<std::size_t>(k) * k, 0.0);
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      double dot = 0.0;
      for (std::size_t p = 0; p < plane; ++p)
        dot += activations.data[i * plane + p] *
               activations.data[j * plane + p];
      gram[static_cast<std::size_t>(i) * k + j] = dot;
      gram[static_cast<std::size_t>(j) * k + i] = dot;
    }

  // Power iteration for the principal eigenvector of the PSD matrix C,
  // started from the column with the largest diagonal entry (guaranteed to
  // overlap a dominant direction unless the stack is zero).
  int pivot = 0;
  for (int i = 1; i < k; ++i)
    if (gram[static_cast<std::size_t>(i) * k + i] >
        gram[static_cast<std::size_t>(pivot) * k + pivot])
      pivot = i;
  if (gram[static_cast<std::size_t>(pivot) * k + pivot] == 0.0)
    return {activations.h, activations.w, std::vector<double>(plane, 0.0)};

  std::vector<double> v(k, 0.0);
  for (int i = 0; i < k; ++i)
    v[i] = gram[static_cast<std::size_t>(i) * k + pivot];
  {
    const double norm =
        std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (double& x : v) x /= norm;
  }
  std::vector<double> next(k, 0.0);
  double lambda = 0.0;
  for (int iter = 0; iter < 1000; ++iter) {
    for (int i = 0; i < k; ++i) {
      double sum = 0.0;
      for (int j = 0; j < k; ++j)
        sum += gram[static_cast<std::size_t>(i) * k + j] * v[j];
      next[i] = sum;
    }
    const double norm =
        std::sqrt(std::inner_product(next.begin(), next.end(), next.begin(), 0.0));
    if (norm == 0.0) break;  // zero stack (or v orthogonal to range)
    for (int i = 0; i < k; ++i) next[i] /= norm;
    const double prev = lambda;
    lambda = norm;
    std::swap(v, next);
    if (iter > 0 && std::abs(lambda - prev) <= 1e-13 * std::max(lambda, 1.0))
      break;
  }

  // Map = O v (the projection onto the first singular direction).
  std::vector<double> raw(plane, 0.0);
  for (int m = 0; m < k; ++m)
    for (std::size_t p = 0; p < plane; ++p)
      raw[p] += activations.data[m * plane + p] * v[m];

  double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (total < 0.0)
    for (double& x : raw) x = -x;  // SVD sign is arbitrary
  for (double& x : raw) x = std::max(x, 0.0);
  return max_normalize(activations.h, activations.w, std::move(raw));
}

SaliencyMap upsample_bilinear(const SaliencyMap& map, int out_h, int out_w) {
  if (out_h < 1 || out_w < 1)
    fail(ErrorKind::BadArgument, "upsample target must be >= 1");
  const double sy =
      out_h > 1 ? static_cast<double>(map.h - 1) / (out_h - 1) : 0.0;
  const double sx =
      out_w > 1 ? static_cast<double>(map.w - 1) / (out_w - 1) : 0.0;
  std::vector<double> out(static_cast<std::size_t>(out_h) * out_w, 0.0);
  for (int r = 0; r < out_h; ++r) {
    const double fy = r * sy;
    const int y0 = std::min(static_cast<int>(fy), map.h - 1);
    const int y1 = std::min(y0 + 1, map.h - 1);
    const double wy = fy - y0;
    for (int c = 0; c < out_w; ++c) {
      const double fx = c * sx;
      const int x0 = std::min(static_cast<int>(fx), map.w - 1);
      const int x1 = std::min(x0 + 1, map.w - 1);
      const double wx = fx - x0;
      const double top = map.at(y0, x0) * (1.0 - wx) + map.at(y0, x1) * wx;
      const double bot = map.at(y1, x0) * (1.0 - wx) + map.at(y1, x1) * wx;
      out[static_cast<std::size_t>(r) * out_w + c] =
          top * (1.0 - wy) + bot * wy;
    }
  }
  return max_normalize(out_h, out_w, std::move(out));
}

Discrepancy map_discrepancy(const SaliencyMap& a, const SaliencyMap& b,
                            double q) {
  if (a.h != b.h || a.w != b.w)
    fail(ErrorKind::ShapeMismatch, "saliency maps differ in shape");
  if (!(q > 0.0 && q <= 1.0))
    fail(ErrorKind::BadArgument, "q must lie in (0, 1]");

  Discrepancy d;
  d.q = q;
  d.pearson = tabular::pearson(a.values, b.values);

  const std::size_t n = a.values.size();
  const std::size_t m = static_cast<std::size_t>(
      std::ceil(q * static_cast<double>(n)));
  auto top_set = [m, n](const SaliencyMap& map) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    // ties broken by row-major index
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) {
                       return map.values[x] > map.values[y];
                     });
    order.resize(m);
    std::vector<std::uint8_t> member(n, 0);
    for (std::size_t i : order) member[i] = 1;
    return member;
  };
  const auto sa = top_set(a), sb = top_set(b);
  std::size_t inter = 0, uni = 0;
  for (std::size_t i = 0; i < n; ++i) {
    inter += sa[i] && sb[i];
    uni += sa[i] || sb[i];
  }
  d.top_q_jaccard =
      uni > 0 ? static_cast<double>(inter) / static_cast<double>(uni) : 1.0;
  return d;
}

}  // namespace radex::cam
