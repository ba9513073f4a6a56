#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace radex::tabular {

struct CvScheme {
  int k = 10;
  int repeats = 20;
  std::uint64_t seed = 0;
  bool stratified = true;
};

/// Fold assignments: result[repeat][sample] = fold index in [0, k).
/// Stratified mode shuffles each class independently (seeded per repeat)
/// and deals round-robin, so per-fold class counts differ by at most one
/// sample from perfect proportion. Throws ClassTooSmall when a class has
/// fewer than k members.
std::vector<std::vector<int>> stratified_folds(std::span<const int> labels,
                                               const CvScheme& scheme);

}  // namespace radex::tabular
