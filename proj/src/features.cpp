#include "ordolex/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "ordolex/errors.hpp"

namespace ordolex {

std::string_view feature_spec_name(FeatureSpec f) noexcept {
  switch (f) {
    case FeatureSpec::N1RatioNp: return "n1_ratio_np";
    case FeatureSpec::NounLenToken: return "noun_len_token";
    case FeatureSpec::VerbLenToken: return "verb_len_token";
    case FeatureSpec::NounsLongerFlag: return "nouns_longer";
    case FeatureSpec::NounVerbLenDiff: return "noun_verb_len_diff";
    case FeatureSpec::NounVerbLenRatio: return "noun_verb_len_ratio";
    case FeatureSpec::Latitude: return "latitude";
    case FeatureSpec::Longitude: return "longitude";
    case FeatureSpec::MacroareaOnehot: return "macroarea";
    case FeatureSpec::FamilyOnehot: break;
  }
  return "family";
}

FeatureVector build_historical_features(const CorpusStats& stats) {
  if (!stats.noun_len_token || !stats.verb_len_token)
    throw MissingClass("'" + stats.language_code +
                       "' lacks noun or verb tokens");
  const double nl = *stats.noun_len_token;
  const double vl = *stats.verb_len_token;
  FeatureVector fv;
  fv.language_code = stats.language_code;
  fv.feature_names = {
      std::string(feature_spec_name(FeatureSpec::NounLenToken)),
      std::string(feature_spec_name(FeatureSpec::VerbLenToken)),
      std::string(feature_spec_name(FeatureSpec::NounsLongerFlag)),
      std::string(feature_spec_name(FeatureSpec::NounVerbLenDiff)),
      std::string(feature_spec_name(FeatureSpec::NounVerbLenRatio))};
  fv.values = {nl, vl, nl > vl ? 1.0 : 0.0, nl - vl, nl / vl};
  return fv;
}

namespace {

double capped_ratio(const CorpusStats& stats, double ratio_cap) {
  if (!stats.n1_ratio_np)
    throw NoEligibleSentences("'" + stats.language_code +
                              "' has no N1 ratio (noun-verb basis)");
  return std::min(*stats.n1_ratio_np, ratio_cap);
}

}  // namespace

FeatureVector build_imputation_features(const CorpusStats& stats,
                                        double ratio_cap) {
  FeatureVector fv;
  fv.language_code = stats.language_code;
  fv.feature_names = {std::string(feature_spec_name(FeatureSpec::N1RatioNp))};
  fv.values = {capped_ratio(stats, ratio_cap)};
  return fv;
}

std::vector<FeatureBlock> blocks_for_level(int model_level) {
  if (model_level < 1 || model_level > 4)
    throw Error("model level must be 1..4, got " + std::to_string(model_level));
  std::vector<FeatureBlock> blocks = {FeatureBlock::N1Ratio};
  if (model_level >= 2) blocks.push_back(FeatureBlock::Area);
  if (model_level >= 3) blocks.push_back(FeatureBlock::Family);
  if (model_level >= 4) blocks.push_back(FeatureBlock::Lengths);
  return blocks;
}

namespace {

std::string family_category(const LanguageRecord& rec) {
  return rec.family.empty() ? "isolate:" + rec.language_code : rec.family;
}

// Lexicographically sorted categories with the first dropped as reference.
std::vector<std::string> onehot_categories(const std::set<std::string>& cats) {
  std::vector<std::string> out(cats.begin(), cats.end());
  if (!out.empty()) out.erase(out.begin());
  return out;
}

}  // namespace

Design build_regression_design(const std::vector<LanguageRecord>& records,
                               const std::vector<CorpusStats>& stats,
                               std::span<const FeatureBlock> blocks,
                               double ratio_cap) {
  std::map<std::string, const CorpusStats*> by_code;
  for (const auto& s : stats) by_code[s.language_code] = &s;

  const bool want_area =
      std::find(blocks.begin(), blocks.end(), FeatureBlock::Area) != blocks.end();
  const bool want_family = std::find(blocks.begin(), blocks.end(),
                                     FeatureBlock::Family) != blocks.end();
  const bool want_lengths = std::find(blocks.begin(), blocks.end(),
                                      FeatureBlock::Lengths) != blocks.end();

  std::set<std::string> macroareas, families;
  for (const auto& rec : records) {
    if (!rec.order_label ||
        (*rec.order_label != OrderLabel::SV && *rec.order_label != OrderLabel::VS))
      throw Error("'" + rec.language_code +
                  "' lacks a binary SV/VS label; filter upstream");
    auto it = by_code.find(rec.language_code);
    if (it == by_code.end())
      throw MissingStats("no stats for '" + rec.language_code + "'");
    const CorpusStats& st = *it->second;
    if (!st.n1_ratio_np)
      throw MissingStats("no N1 ratio for '" + rec.language_code + "'");
    if (want_area &&
        (!std::isfinite(rec.latitude) || !std::isfinite(rec.longitude)))
      throw MissingCoordinates("'" + rec.language_code +
                               "' has non-finite coordinates");
    if (want_lengths && (!st.noun_len_token || !st.verb_len_token))
      throw MissingStats("no noun/verb token lengths for '" +
                         rec.language_code + "'");
    if (want_area) macroareas.insert(rec.macroarea);
    if (want_family) families.insert(family_category(rec));
  }

  const auto macro_cats = onehot_categories(macroareas);
  const auto family_cats = onehot_categories(families);

  Design d;
  for (FeatureBlock b : blocks) {
    switch (b) {
      case FeatureBlock::N1Ratio:
        d.column_names.emplace_back(feature_spec_name(FeatureSpec::N1RatioNp));
        break;
      case FeatureBlock::Area:
        d.column_names.emplace_back(feature_spec_name(FeatureSpec::Latitude));
        d.column_names.emplace_back(feature_spec_name(FeatureSpec::Longitude));
        for (const auto& c : macro_cats)
          d.column_names.push_back("macroarea=" + c);
        break;
      case FeatureBlock::Family:
        for (const auto& c : family_cats)
          d.column_names.push_back("family=" + c);
        break;
      case FeatureBlock::Lengths:
        d.column_names.emplace_back(
            feature_spec_name(FeatureSpec::NounLenToken));
        d.column_names.emplace_back(
            feature_spec_name(FeatureSpec::VerbLenToken));
        break;
    }
  }

  const auto n = static_cast<Eigen::Index>(records.size());
  const auto p = static_cast<Eigen::Index>(d.column_names.size());
  d.X.setZero(n, p);
  d.y.resize(n);

  for (Eigen::Index i = 0; i < n; ++i) {
    const LanguageRecord& rec = records[static_cast<std::size_t>(i)];
    const CorpusStats& st = *by_code.at(rec.language_code);
    d.row_codes.push_back(rec.language_code);
    d.y(i) = (*rec.order_label == OrderLabel::SV) ? 1.0 : 0.0;
    Eigen::Index j = 0;
    for (FeatureBlock b : blocks) {
      switch (b) {
        case FeatureBlock::N1Ratio:
          d.X(i, j++) = std::min(*st.n1_ratio_np, ratio_cap);
          break;
        case FeatureBlock::Area: {
          d.X(i, j++) = rec.latitude;
          d.X(i, j++) = rec.longitude;
          for (const auto& c : macro_cats)
            d.X(i, j++) = (rec.macroarea == c) ? 1.0 : 0.0;
          break;
        }
        case FeatureBlock::Family: {
          const std::string cat = family_category(rec);
          for (const auto& c : family_cats) d.X(i, j++) = (cat == c) ? 1.0 : 0.0;
          break;
        }
        case FeatureBlock::Lengths:
          d.X(i, j++) = *st.noun_len_token;
          d.X(i, j++) = *st.verb_len_token;
          break;
      }
    }
  }
  return d;
}

Design build_regression_design(const std::vector<LanguageRecord>& records,
                               const std::vector<CorpusStats>& stats,
                               int model_level, double ratio_cap) {
  const auto blocks = blocks_for_level(model_level);
  return build_regression_design(records, stats, blocks, ratio_cap);
}

}  // namespace ordolex
