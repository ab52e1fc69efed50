#include "ordolex/hierarchical.hpp"

namespace ordolex {

HierarchicalReport hierarchical_regression(
    const std::vector<LanguageRecord>& records,
    const std::vector<CorpusStats>& stats, bool include_area,
    double ratio_cap) {
  std::vector<int> levels = include_area ? std::vector<int>{1, 2, 3, 4}
                                         : std::vector<int>{1, 3, 4};
  HierarchicalReport report;
  const OlsFit* previous = nullptr;
  for (int level : levels) {
    auto blocks = blocks_for_level(level);
    if (!include_area)
      std::erase(blocks, FeatureBlock::Area);
    Design d = build_regression_design(records, stats, blocks, ratio_cap);

    HierarchicalStep step;
    step.model_level = level;
    step.fit = ols_fit(d.X, d.y, d.column_names);
    if (previous != nullptr) {
      if (step.fit.p == previous->p) {
        // degenerate block added no columns
        step.f_change = 0.0;
        step.f_change_p = 1.0;
        step.f_change_log10_p = 0.0;
      } else {
        FChange fc = f_change(*previous, step.fit);
        step.f_change = fc.f;
        step.f_change_p = fc.p;
        step.f_change_log10_p = fc.log10_p;
      }
    }
    report.push_back(std::move(step));
    previous = &report.back().fit;
  }
  return report;
}

}  // namespace ordolex
