#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ordolex/ingest.hpp"
#include "ordolex/metrics.hpp"

namespace ordolex {

constexpr double kDefaultRatioCap = 100.0;

struct FeatureVector {
  std::string language_code;
  std::vector<double> values;
  std::vector<std::string> feature_names;
  std::optional<OrderLabel> label;
};

// Named feature builders; the one-hot specs expand to one column per category
// present in the supplied records, minus the reference level.
enum class FeatureSpec {
  N1RatioNp,
  NounLenToken,
  VerbLenToken,
  NounsLongerFlag,
  NounVerbLenDiff,
  NounVerbLenRatio,
  Latitude,
  Longitude,
  MacroareaOnehot,
  FamilyOnehot,
};

std::string_view feature_spec_name(FeatureSpec f) noexcept;

// Five features in fixed order: noun and verb token-weighted lengths, a
// nouns-longer flag (strict >), their difference, and their ratio. Throws
// MissingClass when either length is absent.
FeatureVector build_historical_features(const CorpusStats& stats);

// Single feature [n1_ratio_np], with a defined-infinite ratio clamped to
// ratio_cap. Throws NoEligibleSentences when the ratio is absent.
FeatureVector build_imputation_features(const CorpusStats& stats,
                                        double ratio_cap = kDefaultRatioCap);

// Cumulative feature blocks for the nested regression models.
enum class FeatureBlock { N1Ratio, Area, Family, Lengths };

struct Design {
  std::vector<std::string> row_codes;
  std::vector<std::string> column_names;
  Eigen::MatrixXd X;  // n x p, no intercept column
  Eigen::VectorXd y;  // 1.0 = SV, 0.0 = VS
};

// Assembles the design for the given blocks. Every record must carry an
// SV/VS label and have stats in `stats` (matched by language code). One-hot
// categories are fixed from the records, sorted lexicographically, first
// category dropped as reference. Isolates get singleton family categories
// named "isolate:<code>".
Design build_regression_design(const std::vector<LanguageRecord>& records,
                               const std::vector<CorpusStats>& stats,
                               std::span<const FeatureBlock> blocks,
                               double ratio_cap = kDefaultRatioCap);

// Model levels 1..4 map to cumulative blocks: 1 = N1 ratio; 2 = + latitude,
// longitude, macroarea; 3 = + family; 4 = + noun/verb token lengths.
Design build_regression_design(const std::vector<LanguageRecord>& records,
                               const std::vector<CorpusStats>& stats,
                               int model_level,
                               double ratio_cap = kDefaultRatioCap);

std::vector<FeatureBlock> blocks_for_level(int model_level);

}  // namespace ordolex
