#pragma once

#include <optional>
#include <vector>

#include "ordolex/features.hpp"
#include "ordolex/stats.hpp"

namespace ordolex {

struct HierarchicalStep {
  int model_level = 0;
  OlsFit fit;
  // Absent for the first model in the chain.
  std::optional<double> f_change;
  std::optional<double> f_change_p;
  std::optional<double> f_change_log10_p;
};

using HierarchicalReport = std::vector<HierarchicalStep>;

// Fits the cumulative models and chains the F-change test between
// consecutive ones. include_area = false omits model 2, matching the
// area-removed variant. A level that adds no columns (e.g. a family block
// that is empty after the reference drop) reports F-change 0 with p = 1.
HierarchicalReport hierarchical_regression(
    const std::vector<LanguageRecord>& records,
    const std::vector<CorpusStats>& stats, bool include_area = true,
    double ratio_cap = kDefaultRatioCap);

}  // namespace ordolex
