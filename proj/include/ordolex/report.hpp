#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "ordolex/features.hpp"
#include "ordolex/hierarchical.hpp"
#include "ordolex/metrics.hpp"

namespace ordolex {

// Fixed-point, 6 decimals; infinities render as "inf".
std::string format_measure(double v);

// Scientific notation with 2 significant digits ("3.9e-05", "1.0e+00").
// Reconstructs the mantissa from log10_p when p underflowed to zero.
std::string format_p(double p, double log10_p);

// One row per language, sorted by code, absent fields as empty cells.
void emit_stats_csv(std::vector<CorpusStats> stats, std::ostream& out);
void emit_stats_csv(std::vector<CorpusStats> stats,
                    const std::filesystem::path& path);

struct ConditionReport {
  std::string condition;  // a|b|c|d|custom
  HierarchicalReport steps;
};

// Columns: condition,model,n_obs,f_val,p_f,f_change,p_f_change. The first
// model of each condition leaves the change cells empty.
void emit_table2(const std::vector<ConditionReport>& reports,
                 std::ostream& out);
void emit_table2(const std::vector<ConditionReport>& reports,
                 const std::filesystem::path& path);

// Long format: language_code,feature,value.
void emit_feature_csv(const std::vector<FeatureVector>& features,
                      std::ostream& out);
void emit_feature_csv(const std::vector<FeatureVector>& features,
                      const std::filesystem::path& path);

// Inverse of emit_stats_csv; empty cells stay absent.
std::vector<CorpusStats> load_stats_csv(std::istream& in);

// Plain-text crosslinguistic summary of aggregate means.
void render_aggregate_summary(const std::vector<CorpusStats>& stats,
                              std::ostream& out);

// Table-2-style plain-text rendering of hierarchical results.
void render_table2(const std::vector<ConditionReport>& reports,
                   std::ostream& out);

}  // namespace ordolex
