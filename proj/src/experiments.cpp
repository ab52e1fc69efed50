#include "ordolex/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "ordolex/csv.hpp"
#include "ordolex/errors.hpp"
#include "ordolex/features.hpp"
#include "ordolex/hierarchical.hpp"
#include "ordolex/parallel.hpp"

namespace ordolex {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace

std::string file_hash_hex(const std::filesystem::path& path) {
  return hex64(fnv1a64(read_file(path)));
}

std::string config_hash(const ExperimentConfig& cfg) {
  // output_dir and jobs are excluded: they do not affect analysis results
  std::ostringstream ss;
  ss << "condition=" << cfg.condition << "\ncorpus_dir=" << cfg.corpus_dir.string()
     << "\nfamily_list=";
  for (const auto& f : cfg.family_list) ss << f << ",";
  ss << "\nfamily_min_size=" << cfg.family_min_size
     << "\ninclude_free=" << (cfg.include_free ? "true" : "false")
     << "\nlanguage_list=" << cfg.language_list.string()
     << "\nlanguage_table=" << cfg.language_table.string()
     << "\nratio_cap=" << format_measure(cfg.ratio_cap) << "\n";
  return hex64(fnv1a64(ss.str()));
}

void Manifest::write(const std::filesystem::path& output_dir) const {
  nlohmann::json j;
  j["command"] = command;
  j["config_hash"] = config_hash;
  auto sorted_inputs = inputs;
  std::sort(sorted_inputs.begin(), sorted_inputs.end());
  nlohmann::json in_list = nlohmann::json::array();
  for (const auto& p : sorted_inputs) {
    in_list.push_back({{"path", p.string()},
                       {"bytes", std::filesystem::file_size(p)},
                       {"fnv1a64", file_hash_hex(p)}});
  }
  j["inputs"] = std::move(in_list);
  j["counts"] = counts;
  auto sorted_outputs = outputs;
  std::sort(sorted_outputs.begin(), sorted_outputs.end());
  j["outputs"] = sorted_outputs;
  write_file(output_dir / "manifest.json", j.dump(2) + "\n");
}

namespace {

bool known_corpus_extension(const std::filesystem::path& p) {
  const auto ext = p.extension();
  return ext == ".txt" || ext == ".tsv" || ext == ".vert" || ext == ".conllu";
}

struct StatOutcome {
  std::optional<CorpusStats> stats;
  std::string error;
};

}  // namespace

LanguageDataset load_dataset(const ExperimentConfig& cfg) {
  if (cfg.language_table.empty())
    throw ConfigError("no language_table configured");
  std::ifstream table_in(cfg.language_table);
  if (!table_in)
    throw IoError("cannot open language table " + cfg.language_table.string());

  LanguageDataset ds;
  ds.records = load_language_table(table_in);
  ds.inputs.push_back(cfg.language_table);

  std::map<std::string, std::filesystem::path> corpus_files;
  if (!cfg.corpus_dir.empty()) {
    if (!std::filesystem::is_directory(cfg.corpus_dir))
      throw IoError("corpus_dir is not a directory: " + cfg.corpus_dir.string());
    for (const auto& entry :
         std::filesystem::directory_iterator(cfg.corpus_dir)) {
      if (entry.is_regular_file() && known_corpus_extension(entry.path()))
        corpus_files[entry.path().stem().string()] = entry.path();
    }
  }

  std::vector<const LanguageRecord*> with_corpus;
  for (const auto& rec : ds.records) {
    auto it = corpus_files.find(rec.language_code);
    if (it == corpus_files.end()) {
      ds.failures.emplace_back(rec.language_code, "no corpus file");
      continue;
    }
    with_corpus.push_back(&rec);
    ds.inputs.push_back(it->second);
  }

  const TagMap tags = TagMap::upos();
  auto outcomes = parallel_map(
      with_corpus,
      [&](const LanguageRecord* rec) -> StatOutcome {
        try {
          Corpus c = load_corpus_file(corpus_files.at(rec->language_code), tags);
          return {compute_stats(c), {}};
        } catch (const Error& e) {
          return {std::nullopt, e.what()};
        }
      },
      cfg.jobs);

  for (std::size_t i = 0; i < with_corpus.size(); ++i) {
    if (outcomes[i].stats)
      ds.stats.push_back(std::move(*outcomes[i].stats));
    else
      ds.failures.emplace_back(with_corpus[i]->language_code, outcomes[i].error);
  }
  std::sort(ds.failures.begin(), ds.failures.end());
  return ds;
}

namespace {

void ensure_output_dir(const ExperimentConfig& cfg) {
  if (cfg.output_dir.empty()) throw ConfigError("no output_dir configured");
  std::filesystem::create_directories(cfg.output_dir);
}

void write_failures_csv(const std::filesystem::path& path,
                        const std::vector<std::pair<std::string, std::string>>&
                            failures) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << csv_join({"language_code", "reason"});
  for (const auto& [code, reason] : failures) out << csv_join({code, reason});
}

const CorpusStats* find_stats(const std::vector<CorpusStats>& stats,
                              const std::string& code) {
  for (const auto& s : stats)
    if (s.language_code == code) return &s;
  return nullptr;
}

}  // namespace

ImputationOutcome run_imputation(const ExperimentConfig& cfg) {
  ensure_output_dir(cfg);
  LanguageDataset ds = load_dataset(cfg);

  std::map<std::string, const CorpusStats*> by_code;
  for (const auto& s : ds.stats) by_code[s.language_code] = &s;

  ImputationOutcome outcome;
  outcome.failures = ds.failures;

  std::vector<GnbExample> train;
  std::vector<const LanguageRecord*> unlabeled;
  for (const auto& rec : ds.records) {
    auto it = by_code.find(rec.language_code);
    if (it == by_code.end()) continue;  // already listed as failure
    try {
      FeatureVector fv = build_imputation_features(*it->second, cfg.ratio_cap);
      if (rec.order_label) {
        train.push_back(
            {fv.values, std::string(order_label_name(*rec.order_label))});
      } else {
        unlabeled.push_back(&rec);
      }
    } catch (const Error& e) {
      outcome.failures.emplace_back(rec.language_code, e.what());
    }
  }
  if (train.empty()) throw DegenerateClass("no labeled languages to fit on");
  outcome.model =
      gnb_fit(train, {std::string(feature_spec_name(FeatureSpec::N1RatioNp))});
  outcome.n_expert = train.size();

  struct LabelRow {
    std::string code, label, source, posterior;
  };
  std::vector<LabelRow> rows;
  for (const auto& rec : ds.records) {
    if (!by_code.contains(rec.language_code)) continue;
    if (rec.order_label) {
      rows.push_back({rec.language_code,
                      std::string(order_label_name(*rec.order_label)), "expert",
                      ""});
      ++outcome.totals[std::string(order_label_name(*rec.order_label))];
    }
  }
  for (const auto* rec : unlabeled) {
    FeatureVector fv =
        build_imputation_features(*by_code.at(rec->language_code), cfg.ratio_cap);
    GnbPrediction pred = gnb_predict(outcome.model, fv.values);
    const auto best = static_cast<std::size_t>(
        std::find(outcome.model.classes.begin(), outcome.model.classes.end(),
                  pred.label) -
        outcome.model.classes.begin());
    rows.push_back({rec->language_code, pred.label, "imputed",
                    format_measure(pred.posteriors[best])});
    ++outcome.totals[pred.label];
    ++outcome.n_imputed;
  }
  std::sort(rows.begin(), rows.end(),
            [](const LabelRow& a, const LabelRow& b) { return a.code < b.code; });

  std::ostringstream labels;
  labels << csv_join({"language_code", "order_label", "source", "posterior"});
  for (const auto& r : rows)
    labels << csv_join({r.code, r.label, r.source, r.posterior});
  write_file(cfg.output_dir / "labels.csv", labels.str());
  write_file(cfg.output_dir / "gnb_model.json",
             gnb_to_json(outcome.model).dump(2) + "\n");
  write_failures_csv(cfg.output_dir / "failures.csv", outcome.failures);

  Manifest manifest;
  manifest.command = "impute";
  manifest.config_hash = ordolex::config_hash(cfg);
  manifest.inputs = ds.inputs;
  manifest.counts["languages"] = static_cast<std::int64_t>(ds.records.size());
  manifest.counts["expert"] = static_cast<std::int64_t>(outcome.n_expert);
  manifest.counts["imputed"] = static_cast<std::int64_t>(outcome.n_imputed);
  manifest.counts["failed"] = static_cast<std::int64_t>(outcome.failures.size());
  for (const auto& [label, count] : outcome.totals)
    manifest.counts["total_" + label] = static_cast<std::int64_t>(count);
  manifest.outputs = {"labels.csv", "gnb_model.json", "failures.csv"};
  manifest.write(cfg.output_dir);
  return outcome;
}

namespace {

std::vector<GroupLengthMeans> group_means(
    const std::vector<SubjectMeasures>& rows) {
  std::map<std::string, GroupLengthMeans> acc;
  for (const auto& r : rows) {
    auto& g = acc[r.group];
    g.order_label = r.group;
    g.class1_mean += r.within_a;
    g.class2_mean += r.within_b;
    ++g.n_languages;
  }
  std::vector<GroupLengthMeans> out;
  for (auto& [label, g] : acc) {
    g.class1_mean /= static_cast<double>(g.n_languages);
    g.class2_mean /= static_cast<double>(g.n_languages);
    out.push_back(g);
  }
  return out;
}

void append_anova_rows(std::ostringstream& out, const std::string& weighting,
                       const MixedAnovaResult& r) {
  auto row = [&](const char* effect, const TestResult& t) {
    out << csv_join({weighting, effect, format_measure(t.statistic),
                     format_measure(t.df1),
                     t.df2 ? format_measure(*t.df2) : std::string{},
                     format_p(t.p_value, t.log10_p)});
  };
  row("between", r.between);
  row("within", r.within);
  row("interaction", r.interaction);
}

void write_figure_csv(const std::filesystem::path& path, const char* c1,
                      const char* c2,
                      const std::vector<GroupLengthMeans>& means) {
  std::ostringstream out;
  out << csv_join({"order_label", c1, c2, "n_languages"});
  for (const auto& g : means)
    out << csv_join({g.order_label, format_measure(g.class1_mean),
                     format_measure(g.class2_mean),
                     std::to_string(g.n_languages)});
  write_file(path, out.str());
}

}  // namespace

LengthOrderOutcome run_length_order_analysis(const ExperimentConfig& cfg,
                                             Weighting weighting) {
  ensure_output_dir(cfg);
  LanguageDataset ds = load_dataset(cfg);

  std::map<std::string, const LanguageRecord*> rec_by_code;
  for (const auto& r : ds.records) rec_by_code[r.language_code] = &r;

  std::vector<SubjectMeasures> type_rows, token_rows;
  for (const auto& st : ds.stats) {
    const LanguageRecord* rec = rec_by_code.at(st.language_code);
    if (!rec->order_label) continue;
    if (!cfg.include_free && *rec->order_label == OrderLabel::Free) continue;
    const std::string group{order_label_name(*rec->order_label)};
    if (st.arg_len_type && st.pred_len_type)
      type_rows.push_back({group, *st.arg_len_type, *st.pred_len_type});
    if (st.noun_len_token && st.verb_len_token)
      token_rows.push_back({group, *st.noun_len_token, *st.verb_len_token});
  }

  LengthOrderOutcome outcome;
  std::ostringstream anova_csv;
  anova_csv << csv_join(
      {"weighting", "effect", "statistic", "df1", "df2", "p_value"});
  std::vector<std::string> outputs = {"anova_results.csv"};

  if (weighting != Weighting::Token) {
    outcome.type_weighted = mixed_anova(type_rows);
    outcome.figure1 = group_means(type_rows);
    append_anova_rows(anova_csv, "type", *outcome.type_weighted);
    write_figure_csv(cfg.output_dir / "figure1_normalized.csv",
                     "arg_len_type_mean", "pred_len_type_mean", outcome.figure1);
    outputs.push_back("figure1_normalized.csv");
  }
  if (weighting != Weighting::Type) {
    outcome.token_weighted = mixed_anova(token_rows);
    outcome.figure2 = group_means(token_rows);
    append_anova_rows(anova_csv, "token", *outcome.token_weighted);
    write_figure_csv(cfg.output_dir / "figure2_frequency.csv",
                     "noun_len_token_mean", "verb_len_token_mean",
                     outcome.figure2);
    outputs.push_back("figure2_frequency.csv");
  }
  write_file(cfg.output_dir / "anova_results.csv", anova_csv.str());

  Manifest manifest;
  manifest.command = "anova";
  manifest.config_hash = ordolex::config_hash(cfg);
  manifest.inputs = ds.inputs;
  manifest.counts["languages"] = static_cast<std::int64_t>(ds.records.size());
  manifest.counts["type_rows"] = static_cast<std::int64_t>(type_rows.size());
  manifest.counts["token_rows"] = static_cast<std::int64_t>(token_rows.size());
  manifest.counts["failed"] = static_cast<std::int64_t>(ds.failures.size());
  manifest.outputs = outputs;
  manifest.write(cfg.output_dir);
  return outcome;
}

HistoricalOutcome run_historical_prediction(
    const ExperimentConfig& cfg, const std::filesystem::path& train_table,
    const std::vector<std::filesystem::path>& test_corpora) {
  ensure_output_dir(cfg);

  // test corpora first: their codes are excluded from training
  const TagMap tags = TagMap::upos();
  std::vector<std::pair<std::string, FeatureVector>> test_features;
  std::set<std::string> test_codes;
  for (const auto& path : test_corpora) {
    Corpus c = load_corpus_file(path, tags);
    test_features.emplace_back(c.language_code,
                               build_historical_features(compute_stats(c)));
    test_codes.insert(c.language_code);
  }

  std::ifstream in(train_table);
  if (!in) throw IoError("cannot open train table " + train_table.string());
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) throw SchemaError("empty train table");
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < row.size(); ++i) col[row[i]] = i;
  for (const char* need :
       {"language_code", "noun_len_token", "verb_len_token", "order_label"})
    if (!col.contains(need))
      throw SchemaError(std::string("train table missing column '") + need +
                        "'");

  auto number_at = [&](const std::vector<std::string>& r, const char* name,
                       int rowno) {
    const std::string& cell = r[col.at(name)];
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size())
      throw RowError(std::string("unparseable ") + name + " at row " +
                     std::to_string(rowno));
    return v;
  };

  HistoricalOutcome outcome;
  std::vector<GnbExample> train;
  int rowno = 1;
  while (reader.next(row)) {
    ++rowno;
    const std::string& code = row[col.at("language_code")];
    if (test_codes.contains(code)) {
      ++outcome.dropped_overlap;
      continue;
    }
    auto label = parse_order_label(row[col.at("order_label")]);
    if (!label) continue;  // unlabeled rows cannot train
    CorpusStats st;
    st.language_code = code;
    st.noun_len_token = number_at(row, "noun_len_token", rowno);
    st.verb_len_token = number_at(row, "verb_len_token", rowno);
    train.push_back({build_historical_features(st).values,
                     std::string(order_label_name(*label))});
  }

  std::vector<std::string> feature_names;
  if (!test_features.empty())
    feature_names = test_features.front().second.feature_names;
  outcome.model = gnb_fit(train, std::move(feature_names));

  std::ostringstream pred_csv;
  std::vector<std::string> header = {"language_code", "predicted"};
  for (const auto& cls : outcome.model.classes) header.push_back("p_" + cls);
  pred_csv << csv_join(header);
  std::vector<FeatureVector> test_fvs;
  for (const auto& [code, fv] : test_features) {
    GnbPrediction pred = gnb_predict(outcome.model, fv.values);
    std::vector<std::string> cells = {code, pred.label};
    for (double p : pred.posteriors) cells.push_back(format_measure(p));
    pred_csv << csv_join(cells);
    outcome.predictions.push_back({code, pred.label, pred.posteriors});
    test_fvs.push_back(fv);
  }
  write_file(cfg.output_dir / "predictions.csv", pred_csv.str());
  {
    std::ostringstream features_csv;
    emit_feature_csv(test_fvs, features_csv);
    write_file(cfg.output_dir / "features.csv", features_csv.str());
  }
  write_file(cfg.output_dir / "gnb_model.json",
             gnb_to_json(outcome.model).dump(2) + "\n");

  Manifest manifest;
  manifest.command = "classify-historical";
  manifest.config_hash = ordolex::config_hash(cfg);
  manifest.inputs = test_corpora;
  manifest.inputs.push_back(train_table);
  manifest.counts["train_rows"] = static_cast<std::int64_t>(train.size());
  manifest.counts["test_corpora"] =
      static_cast<std::int64_t>(test_features.size());
  manifest.counts["dropped_overlap"] =
      static_cast<std::int64_t>(outcome.dropped_overlap);
  manifest.outputs = {"predictions.csv", "features.csv", "gnb_model.json"};
  manifest.write(cfg.output_dir);
  return outcome;
}

VarianceOutcome run_variance_decomposition(const ExperimentConfig& cfg,
                                           bool include_area) {
  ensure_output_dir(cfg);
  LanguageDataset ds = load_dataset(cfg);

  const ConditionFilter filter = condition_filter(cfg);
  std::vector<LanguageRecord> filtered = apply_filter(filter, ds.records);

  VarianceOutcome outcome;
  std::vector<LanguageRecord> selected;
  for (const auto& rec : filtered) {
    if (!rec.order_label || *rec.order_label == OrderLabel::Free)
      continue;  // binary response only
    const CorpusStats* st = find_stats(ds.stats, rec.language_code);
    if (st == nullptr || !st->n1_ratio_np || !st->noun_len_token ||
        !st->verb_len_token) {
      ++outcome.dropped_no_stats;
      continue;
    }
    selected.push_back(rec);
  }
  if (selected.size() < 2)
    throw DegenerateDesign("condition '" + cfg.condition +
                           "' selects fewer than 2 usable languages");

  outcome.report.condition =
      include_area ? cfg.condition : cfg.condition + "-noarea";
  outcome.report.steps =
      hierarchical_regression(selected, ds.stats, include_area, cfg.ratio_cap);
  outcome.n_obs = selected.size();

  const std::string table_name =
      include_area ? "table2.csv" : "table2_noarea.csv";
  {
    std::ostringstream out;
    emit_table2({outcome.report}, out);
    write_file(cfg.output_dir / table_name, out.str());
  }

  Manifest manifest;
  manifest.command = "regress";
  manifest.config_hash = ordolex::config_hash(cfg);
  manifest.inputs = ds.inputs;
  manifest.counts["languages"] = static_cast<std::int64_t>(ds.records.size());
  manifest.counts["condition_selected"] =
      static_cast<std::int64_t>(filtered.size());
  manifest.counts["n_obs"] = static_cast<std::int64_t>(outcome.n_obs);
  manifest.counts["dropped_no_stats"] =
      static_cast<std::int64_t>(outcome.dropped_no_stats);
  manifest.counts["failed"] = static_cast<std::int64_t>(ds.failures.size());
  manifest.outputs = {table_name};
  manifest.write(cfg.output_dir);
  return outcome;
}

}  // namespace ordolex
