#pragma once

#include <string>
#include <utility>
#include <vector>

#include "radex/image.hpp"
#include "radex/texture.hpp"

namespace radex::radiomics {

enum class Category { shape2d, firstorder, glcm, glrlm, glszm, gldm, ngtdm };
enum class Source { original, waveletLL, waveletLH, waveletHL, waveletHH };

const char* to_string(Category c);
const char* to_string(Source s);
Category category_from_string(const std::string& s);
Source source_from_string(const std::string& s);

/// Identity of one emitted feature. The full column name is
/// "<source>_<category>_<base>", e.g. "waveletLL_firstorder_Energy".
struct FeatureDescriptor {
  std::string base_name;
  Category category = Category::firstorder;
  Source source = Source::original;

  std::string full_name() const;
  /// Grouping key shared by the five filter variants of one feature.
  std::string group_key() const;
};

/// Parses "<source>_<category>_<base>"; throws UnresolvableName.
FeatureDescriptor parse_feature_name(const std::string& name);

/// Ordered (name, value) pairs; order matches the feature dictionary.
using NamedValues = std::vector<std::pair<std::string, double>>;

NamedValues glcm_features(const Glcm& m);
NamedValues glrlm_features(const Glrlm& m);
NamedValues glszm_features(const Glszm& m);
NamedValues gldm_features(const Gldm& m);
NamedValues ngtdm_features(const Ngtdm& m);

/// Intensity statistics over the in-mask pixels; Entropy and Uniformity use
/// the discretized histogram. Kurtosis is non-excess (normal -> 3).
NamedValues first_order_features(const imaging::GrayImage2D& image,
                                 const imaging::RoiMask& mask,
                                 const imaging::DiscretizedRoi& roi);

NamedValues shape2d_features(const imaging::RoiMask& mask,
                             double pixel_spacing);

struct ExtractConfig {
  int ng = 255;
  int gldm_alpha = 0;
};

struct FeatureVector {
  std::vector<std::string> names;
  std::vector<double> values;
};

/// Full per-sample extraction: shape on the original mask; first-order and
/// the five texture families on the original image and on the four Haar
/// subbands (subband mask by 2x2 majority vote, ties true). Columns follow
/// the feature dictionary order. The image is cropped to the mask bounding
/// box first; in-mask intensities are unaffected by the crop.
FeatureVector extract_all(const imaging::GrayImage2D& image,
                          const imaging::RoiMask& mask,
                          const ExtractConfig& config = {});

struct DictionaryEntry {
  FeatureDescriptor descriptor;
  std::string formula;
};

/// The complete ordered feature set with formula notes; defines the column
/// order of every feature CSV this library writes.
const std::vector<DictionaryEntry>& feature_dictionary();

/// Column names only, in dictionary order.
std::vector<std::string> feature_names();

}  // namespace radex::radiomics
