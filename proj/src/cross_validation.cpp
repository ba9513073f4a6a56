#include "radex/cross_validation.hpp"

#include <array>

#include "radex/error.hpp"
#include "radex/rng.hpp"

namespace radex::tabular {

std::vector<std::vector<int>> stratified_folds(std::span<const int> labels,
                                               const CvScheme& scheme) {
  if (scheme.k < 2) fail(ErrorKind::BadArgument, "fold count must be >= 2");
  if (scheme.repeats < 1)
    fail(ErrorKind::BadArgument, "repeat count must be >= 1");

  std::array<std::vector<std::size_t>, 2> by_class;
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1)
      fail(ErrorKind::BadFormat, "labels must be 0 or 1");
    by_class[labels[i]].push_back(i);
    all.push_back(i);
  }
  if (scheme.stratified) {
    for (int c = 0; c < 2; ++c)
      if (by_class[c].size() < static_cast<std::size_t>(scheme.k))
        fail(ErrorKind::ClassTooSmall,
             "class " + std::to_string(c) + " has fewer members than folds");
  } else if (all.size() < static_cast<std::size_t>(scheme.k)) {
    fail(ErrorKind::ClassTooSmall, "fewer samples than folds");
  }

  std::vector<std::vector<int>> assignments;
  assignments.reserve(scheme.repeats);
  for (int rep = 0; rep < scheme.repeats; ++rep) {
    Rng rng(mix_seed(scheme.seed, {0x666f6c64ULL /*'fold'*/,
                                   static_cast<std::uint64_t>(rep)}));
    std::vector<int> fold_of(labels.size(), -1);
    auto deal = [&](std::vector<std::size_t> indices) {
      rng.shuffle(indices);
      for (std::size_t i = 0; i < indices.size(); ++i)
        fold_of[indices[i]] = static_cast<int>(i % scheme.k);
    };
    if (scheme.stratified) {
      deal(by_class[0]);
      deal(by_class[1]);
    } else {
      deal(all);
    }
    assignments.push_back(std::move(fold_of));
  }
  return assignments;
}

}  // namespace radex::tabular
