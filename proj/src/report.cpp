#include "ordolex/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>

#include "ordolex/csv.hpp"
#include "ordolex/errors.hpp"

namespace ordolex {

std::string format_measure(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string format_p(double p, double log10_p) {
  char buf[64];
  if (p > 0.0 || !std::isfinite(log10_p)) {
    std::snprintf(buf, sizeof buf, "%.1e", p);
    return buf;
  }
  // p underflowed; rebuild mantissa/exponent from the log
  double exponent = std::floor(log10_p);
  double mantissa = std::pow(10.0, log10_p - exponent);
  if (mantissa >= 9.95) {  // rounding to one decimal would carry over
    mantissa /= 10.0;
    exponent += 1.0;
  }
  std::snprintf(buf, sizeof buf, "%.1fe%+03d", mantissa,
                static_cast<int>(exponent));
  return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  return out;
}

std::string field_cell(const CorpusStats& s, const std::string& field) {
  if (field == "unique_args") return std::to_string(s.unique_args);
  if (field == "unique_preds") return std::to_string(s.unique_preds);
  if (field == "n_sentences") return std::to_string(s.n_sentences);
  auto v = stats_field_value(s, field);
  return v ? format_measure(*v) : std::string{};
}

}  // namespace

void emit_stats_csv(std::vector<CorpusStats> stats, std::ostream& out) {
  std::sort(stats.begin(), stats.end(),
            [](const CorpusStats& a, const CorpusStats& b) {
              return a.language_code < b.language_code;
            });
  std::vector<std::string> header = {"language_code"};
  for (const auto& f : corpus_stats_fields()) header.push_back(f);
  out << csv_join(header);
  for (const CorpusStats& s : stats) {
    std::vector<std::string> row = {s.language_code};
    for (const auto& f : corpus_stats_fields()) row.push_back(field_cell(s, f));
    out << csv_join(row);
  }
}

void emit_stats_csv(std::vector<CorpusStats> stats,
                    const std::filesystem::path& path) {
  auto out = open_out(path);
  emit_stats_csv(std::move(stats), out);
}

namespace {

std::string format_f(double f) {
  if (std::isinf(f)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", f);
  return buf;
}

}  // namespace

void emit_table2(const std::vector<ConditionReport>& reports,
                 std::ostream& out) {
  out << csv_join({"condition", "model", "n_obs", "f_val", "p_f", "f_change",
                   "p_f_change"});
  for (const ConditionReport& cr : reports) {
    for (const HierarchicalStep& step : cr.steps) {
      std::vector<std::string> row = {
          cr.condition,
          std::to_string(step.model_level),
          std::to_string(step.fit.n),
          format_f(step.fit.f_statistic),
          format_p(step.fit.f_p_value, step.fit.log10_f_p),
          step.f_change ? format_f(*step.f_change) : std::string{},
          step.f_change_p ? format_p(*step.f_change_p, *step.f_change_log10_p)
                          : std::string{}};
      out << csv_join(row);
    }
  }
}

void emit_table2(const std::vector<ConditionReport>& reports,
                 const std::filesystem::path& path) {
  auto out = open_out(path);
  emit_table2(reports, out);
}

void emit_feature_csv(const std::vector<FeatureVector>& features,
                      std::ostream& out) {
  out << csv_join({"language_code", "feature", "value"});
  for (const FeatureVector& fv : features)
    for (std::size_t i = 0; i < fv.values.size(); ++i)
      out << csv_join(
          {fv.language_code, fv.feature_names[i], format_measure(fv.values[i])});
}

void emit_feature_csv(const std::vector<FeatureVector>& features,
                      const std::filesystem::path& path) {
  auto out = open_out(path);
  emit_feature_csv(features, out);
}

std::vector<CorpusStats> load_stats_csv(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) throw SchemaError("empty stats CSV");
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < row.size(); ++i) col[row[i]] = i;
  if (!col.contains("language_code"))
    throw SchemaError("stats CSV missing language_code column");

  auto cell_value = [&](const std::vector<std::string>& r,
                        const std::string& field) -> std::optional<double> {
    auto it = col.find(field);
    if (it == col.end() || it->second >= r.size()) return std::nullopt;
    const std::string& cell = r[it->second];
    if (cell.empty()) return std::nullopt;
    if (cell == "inf") return std::numeric_limits<double>::infinity();
    return std::stod(cell);
  };

  std::vector<CorpusStats> out;
  while (reader.next(row)) {
    CorpusStats s;
    s.language_code = row[col["language_code"]];
    s.n1_ratio_np = cell_value(row, "n1_ratio_np");
    s.n1_ratio_ap = cell_value(row, "n1_ratio_ap");
    s.noun_len_type = cell_value(row, "noun_len_type");
    s.verb_len_type = cell_value(row, "verb_len_type");
    s.noun_len_token = cell_value(row, "noun_len_token");
    s.verb_len_token = cell_value(row, "verb_len_token");
    s.arg_len_type = cell_value(row, "arg_len_type");
    s.pred_len_type = cell_value(row, "pred_len_type");
    s.arg_len_token = cell_value(row, "arg_len_token");
    s.pred_len_token = cell_value(row, "pred_len_token");
    if (auto v = cell_value(row, "unique_args"))
      s.unique_args = static_cast<std::size_t>(*v);
    if (auto v = cell_value(row, "unique_preds"))
      s.unique_preds = static_cast<std::size_t>(*v);
    if (auto v = cell_value(row, "n_sentences"))
      s.n_sentences = static_cast<std::size_t>(*v);
    out.push_back(std::move(s));
  }
  return out;
}

void render_aggregate_summary(const std::vector<CorpusStats>& stats,
                              std::ostream& out) {
  auto agg = aggregate_stats(stats);
  out << "languages: " << stats.size() << "\n";
  out << "field                 mean          n\n";
  for (const auto& field : corpus_stats_fields()) {
    const FieldSummary& s = agg.at(field);
    out << std::left << std::setw(18) << field << std::right << std::setw(12)
        << format_measure(s.mean) << std::setw(8) << s.n << "\n";
  }
}

void render_table2(const std::vector<ConditionReport>& reports,
                   std::ostream& out) {
  for (const ConditionReport& cr : reports) {
    out << "condition " << cr.condition << "\n";
    out << "  model  n_obs      f_val        p(F)   f_change  p(change)\n";
    for (const HierarchicalStep& step : cr.steps) {
      out << "  " << std::setw(5) << step.model_level << std::setw(7)
          << step.fit.n << std::setw(11) << format_f(step.fit.f_statistic)
          << std::setw(12) << format_p(step.fit.f_p_value, step.fit.log10_f_p);
      if (step.f_change) {
        out << std::setw(11) << format_f(*step.f_change) << std::setw(11)
            << format_p(*step.f_change_p, *step.f_change_log10_p);
      }
      out << "\n";
    }
  }
}

}  // namespace ordolex
