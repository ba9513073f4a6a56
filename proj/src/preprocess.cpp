#include "radex/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "radex/error.hpp"
#include "radex/parallel.hpp"
#include "radex/stats.hpp"

namespace radex::tabular {

NzvResult near_zero_variance_filter(const FeatureMatrix& m, double cutoff) {
  if (m.n_samples() < 2)
    fail(ErrorKind::TooFewSamples, "variance filter needs n >= 2");

  std::vector<std::size_t> kept;
  std::vector<std::string> dropped;
  for (std::size_t f = 0; f < m.n_features(); ++f) {
    const auto col = m.column(f);
    const auto [lo_it, hi_it] = std::minmax_element(col.begin(), col.end());
    const double lo = *lo_it, hi = *hi_it;
    bool drop;
    if (hi == lo) {
      drop = true;
    } else {
      double mean = 0.0;
      for (double v : col) mean += (v - lo) / (hi - lo);
      mean /= static_cast<double>(col.size());
      double var = 0.0;
      for (double v : col) {
        const double scaled = (v - lo) / (hi - lo);
        var += (scaled - mean) * (scaled - mean);
      }
      var /= static_cast<double>(col.size());
      drop = var < cutoff;
    }
    if (drop)
      dropped.push_back(m.columns()[f]);
    else
      kept.push_back(f);
  }
  if (kept.empty())
    fail(ErrorKind::AllColumnsRemoved,
         "variance filter removed every column");
  return {m.select_columns(kept), std::move(dropped)};
}

PruneResult correlation_prune(const FeatureMatrix& m, double threshold,
                              int jobs) {
  const std::size_t p = m.n_features();
  if (m.n_samples() < 3)
    fail(ErrorKind::TooFewSamples, "correlation pruning needs n >= 3");

  // |rho| for all pairs, computed once; undefined pairs count as 0
  std::vector<RankedColumn> ranked(p);
  parallel_for(p, jobs, [&](std::size_t f) {
    ranked[f] = RankedColumn::from_values(m.column(f));
  });
  std::vector<double> abs_rho(p * p, 0.0);
  parallel_for(p, jobs, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      const auto rho = spearman_ranked(ranked[i], ranked[j]);
      const double a = rho ? std::abs(*rho) : 0.0;
      abs_rho[i * p + j] = a;
      abs_rho[j * p + i] = a;
    }
  });

  std::vector<std::uint8_t> alive(p, 1);
  std::vector<std::pair<std::string, std::string>> dropped;

  for (;;) {
    double best = threshold;
    std::size_t bi = p, bj = p;
    for (std::size_t i = 0; i < p; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < p; ++j) {
        if (!alive[j]) continue;
        if (abs_rho[i * p + j] > best) {
          best = abs_rho[i * p + j];
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == p) break;  // no remaining pair exceeds the threshold

    const auto mean_abs = [&](std::size_t f) {
      double sum = 0.0;
      std::size_t count = 0;
      for (std::size_t o = 0; o < p; ++o) {
        if (!alive[o] || o == f) continue;
        sum += abs_rho[f * p + o];
        ++count;
      }
      return count > 0 ? sum / static_cast<double>(count) : 0.0;
    };
    const std::size_t victim = mean_abs(bi) > mean_abs(bj) ? bi : bj;
    const std::size_t kept = victim == bi ? bj : bi;
    alive[victim] = 0;
    dropped.emplace_back(m.columns()[victim], m.columns()[kept]);
  }

  std::vector<std::size_t> kept_idx;
  for (std::size_t f = 0; f < p; ++f)
    if (alive[f]) kept_idx.push_back(f);
  return {m.select_columns(kept_idx), std::move(dropped)};
}

}  // namespace radex::tabular
