#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ordolex/gnb.hpp"
#include "ordolex/ingest.hpp"
#include "ordolex/metrics.hpp"
#include "ordolex/report.hpp"
#include "ordolex/stats.hpp"

namespace ordolex {

struct ExperimentConfig {
  std::filesystem::path corpus_dir;
  std::filesystem::path language_table;
  std::string condition = "custom";  // a|b|c|d|custom
  int family_min_size = 1;           // custom condition threshold
  bool include_free = true;
  double ratio_cap = 100.0;
  std::filesystem::path output_dir = "out";
  std::filesystem::path language_list;    // condition (a) payload
  std::vector<std::string> family_list;   // condition (b) payload
  unsigned jobs = 0;                      // 0 = available parallelism
};

// Flat key = value file, TOML-compatible: quoted strings, numbers, booleans,
// ["a", "b"] arrays, '#' comments. Relative paths resolve against the config
// file's directory. Unknown keys are errors.
ExperimentConfig load_config(const std::filesystem::path& path);

struct ConditionFilter {
  enum class Mode { LanguageList, FamilyList, FamilyMinSize };
  Mode mode = Mode::FamilyMinSize;
  std::vector<std::string> names;  // language codes or family names
  int min_size = 1;
};

// a = language list file, b = family list, c = families with > 75 members,
// d = families with >= 2 members, custom = family_min_size from the config.
ConditionFilter condition_filter(const ExperimentConfig& cfg);

// Family sizes are counted over the full record set; isolates count as
// singleton families.
std::vector<LanguageRecord> apply_filter(
    const ConditionFilter& filter, const std::vector<LanguageRecord>& records);

// Language table joined with per-corpus stats. Languages whose corpus is
// missing or unusable are listed in `failures`, never silently dropped.
struct LanguageDataset {
  std::vector<LanguageRecord> records;
  std::vector<CorpusStats> stats;
  std::vector<std::pair<std::string, std::string>> failures;  // code, reason
  std::vector<std::filesystem::path> inputs;
};

LanguageDataset load_dataset(const ExperimentConfig& cfg);

// Deterministic run manifest: no timestamps, sorted keys, FNV-1a content
// hashes. Two runs over identical inputs write identical bytes.
struct Manifest {
  std::string command;
  std::string config_hash;
  std::vector<std::filesystem::path> inputs;
  std::map<std::string, std::int64_t> counts;
  std::vector<std::string> outputs;

  void write(const std::filesystem::path& output_dir) const;
};

std::uint64_t fnv1a64(std::string_view bytes) noexcept;
std::string file_hash_hex(const std::filesystem::path& path);
std::string config_hash(const ExperimentConfig& cfg);

struct ImputationOutcome {
  std::map<std::string, std::size_t> totals;  // expert + imputed, per class
  std::size_t n_expert = 0;
  std::size_t n_imputed = 0;
  std::vector<std::pair<std::string, std::string>> failures;
  GnbModel model;
};

// Fits the single-feature classifier on expert-labeled languages and imputes
// the rest. Writes labels.csv, gnb_model.json, failures.csv, manifest.json.
ImputationOutcome run_imputation(const ExperimentConfig& cfg);

enum class Weighting { Type, Token, Both };

struct GroupLengthMeans {
  std::string order_label;
  double class1_mean = 0.0;  // arg (type run) or noun (token run)
  double class2_mean = 0.0;  // pred (type run) or verb (token run)
  std::size_t n_languages = 0;
};

struct LengthOrderOutcome {
  std::optional<MixedAnovaResult> type_weighted;   // arg/pred, unique forms
  std::optional<MixedAnovaResult> token_weighted;  // noun/verb, occurrences
  std::vector<GroupLengthMeans> figure1;           // normalized lengths
  std::vector<GroupLengthMeans> figure2;           // frequency-weighted
};

// Writes anova_results.csv, figure1_normalized.csv, figure2_frequency.csv,
// manifest.json.
LengthOrderOutcome run_length_order_analysis(const ExperimentConfig& cfg,
                                             Weighting weighting = Weighting::Both);

struct HistoricalPrediction {
  std::string language_code;
  std::string predicted;
  std::vector<double> posteriors;  // aligned with model.classes
};

struct HistoricalOutcome {
  GnbModel model;
  std::vector<HistoricalPrediction> predictions;
  std::size_t dropped_overlap = 0;  // train rows matching a test language
};

// Train table CSV needs columns language_code, noun_len_token,
// verb_len_token, order_label; extra columns are ignored. Writes
// predictions.csv, gnb_model.json, manifest.json.
HistoricalOutcome run_historical_prediction(
    const ExperimentConfig& cfg, const std::filesystem::path& train_table,
    const std::vector<std::filesystem::path>& test_corpora);

struct VarianceOutcome {
  ConditionReport report;
  std::size_t n_obs = 0;
  std::size_t dropped_no_stats = 0;
};

// The model 1-4 chain under the configured condition filter; include_area =
// false runs the area-omitted variant. Writes table2.csv (or
// table2_noarea.csv) and manifest.json.
VarianceOutcome run_variance_decomposition(const ExperimentConfig& cfg,
                                           bool include_area = true);

}  // namespace ordolex
