#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ordolex/errors.hpp"
#include "ordolex/experiments.hpp"
#include "ordolex/features.hpp"
#include "ordolex/hierarchical.hpp"
#include "ordolex/ingest.hpp"
#include "ordolex/metrics.hpp"
#include "ordolex/parallel.hpp"
#include "ordolex/report.hpp"
#include "ordolex/stats.hpp"

namespace {

using namespace ordolex;

// fixed 6-decimal, trailing zeros trimmed but one decimal kept: 2.0, 4.51
std::string format_ratio(double v) {
  if (std::isinf(v)) return "inf";
  std::string s = format_measure(v);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.push_back('0');
  return s;
}

std::filesystem::path default_corpus_root() {
  const char* env = std::getenv("ORDOLEX_DATA_DIR");
  return env ? std::filesystem::path(env) : std::filesystem::path{};
}

struct CommonOpts {
  std::filesystem::path config_path;
  unsigned jobs = 0;
};

ExperimentConfig effective_config(const CommonOpts& common,
                                  const std::filesystem::path& table,
                                  const std::filesystem::path& corpora,
                                  const std::filesystem::path& out_dir) {
  ExperimentConfig cfg;
  if (!common.config_path.empty()) cfg = load_config(common.config_path);
  if (!table.empty()) cfg.language_table = table;
  if (!corpora.empty()) cfg.corpus_dir = corpora;
  if (cfg.corpus_dir.empty()) cfg.corpus_dir = default_corpus_root();
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (common.jobs != 0) cfg.jobs = common.jobs;
  return cfg;
}

int cmd_stats(const std::vector<std::filesystem::path>& corpora,
              const std::filesystem::path& out_path, unsigned jobs) {
  const TagMap tags = TagMap::upos();
  auto stats = parallel_map(
      corpora,
      [&](const std::filesystem::path& p) {
        return compute_stats(load_corpus_file(p, tags));
      },
      jobs);
  if (out_path.empty()) {
    emit_stats_csv(stats, std::cout);
  } else {
    emit_stats_csv(stats, out_path);
    std::cout << "wrote " << out_path.string() << "\n";
  }
  return 0;
}

int cmd_n1(const std::filesystem::path& corpus_path) {
  Corpus c = load_corpus_file(corpus_path, TagMap::upos());
  std::cout << "noun-verb\t" << format_ratio(n1_ratio(c, N1Basis::NounVerb))
            << "\n";
  std::cout << "argument-predicate\t"
            << format_ratio(n1_ratio(c, N1Basis::ArgumentPredicate)) << "\n";
  return 0;
}

void print_anova(const char* name, const MixedAnovaResult& r) {
  auto line = [&](const char* effect, const TestResult& t) {
    std::cout << name << " " << effect << ": F(" << format_ratio(t.df1) << ", "
              << format_ratio(t.df2.value_or(0)) << ") = "
              << format_ratio(t.statistic) << ", p = "
              << format_p(t.p_value, t.log10_p) << "\n";
  };
  line("between", r.between);
  line("within", r.within);
  line("interaction", r.interaction);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordolex: word-order and word-length corpus analytics"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  CommonOpts common;
  app.add_option("--config", common.config_path,
                 "experiment config file (flat key = value)");
  app.add_option("--jobs", common.jobs,
                 "worker pool size for per-language processing");

  // stats
  std::vector<std::filesystem::path> stats_corpora;
  std::filesystem::path stats_out;
  auto* stats_cmd =
      app.add_subcommand("stats", "per-language corpus statistics CSV");
  stats_cmd->add_option("corpus", stats_corpora, "corpus files")
      ->required()
      ->check(CLI::ExistingFile);
  stats_cmd->add_option("--out", stats_out, "output CSV path (default stdout)");

  // n1
  std::filesystem::path n1_corpus;
  auto* n1_cmd = app.add_subcommand("n1", "print both N1 ratio bases");
  n1_cmd->add_option("corpus", n1_corpus, "corpus file")
      ->required()
      ->check(CLI::ExistingFile);

  // impute
  std::filesystem::path imp_table, imp_corpora, imp_out;
  auto* imp_cmd = app.add_subcommand(
      "impute", "impute word-order labels for unlabeled languages");
  imp_cmd->add_option("--table", imp_table, "language metadata CSV");
  imp_cmd->add_option("--corpora", imp_corpora, "corpus directory");
  imp_cmd->add_option("--out", imp_out, "output directory");

  // classify-historical
  std::filesystem::path hist_train, hist_out;
  std::vector<std::filesystem::path> hist_test;
  auto* hist_cmd = app.add_subcommand(
      "classify-historical",
      "predict word order of test corpora from noun/verb lengths");
  hist_cmd->add_option("--train", hist_train, "training table CSV")
      ->required()
      ->check(CLI::ExistingFile);
  hist_cmd->add_option("--test", hist_test, "test corpus files")
      ->required()
      ->check(CLI::ExistingFile);
  hist_cmd->add_option("--out", hist_out, "output directory");

  // anova
  std::filesystem::path an_table, an_corpora, an_out;
  std::string an_weighting = "both";
  auto* an_cmd = app.add_subcommand(
      "anova", "mixed-design ANOVA of class lengths by word order");
  an_cmd->add_option("--table", an_table, "language metadata CSV");
  an_cmd->add_option("--corpora", an_corpora, "corpus directory");
  an_cmd->add_option("--weighting", an_weighting, "type|token (default both)")
      ->check(CLI::IsMember({"type", "token", "both"}));
  an_cmd->add_option("--out", an_out, "output directory");

  // regress
  std::filesystem::path rg_table, rg_corpora, rg_out, rg_langlist;
  std::string rg_condition;
  std::vector<std::string> rg_families;
  int rg_min_family = 0;
  bool rg_no_area = false;
  auto* rg_cmd = app.add_subcommand(
      "regress", "hierarchical regression of word order on nested features");
  rg_cmd->add_option("--table", rg_table, "language metadata CSV");
  rg_cmd->add_option("--corpora", rg_corpora, "corpus directory");
  rg_cmd->add_option("--condition", rg_condition, "a|b|c|d|custom")
      ->check(CLI::IsMember({"a", "b", "c", "d", "custom"}));
  rg_cmd->add_option("--language-list", rg_langlist,
                     "language code list file (condition a)");
  rg_cmd->add_option("--family-list", rg_families,
                     "family names (condition b)");
  rg_cmd->add_option("--min-family-size", rg_min_family,
                     "family size threshold (condition custom)");
  rg_cmd->add_flag("--no-area", rg_no_area, "omit the area model (model 2)");
  rg_cmd->add_option("--out", rg_out, "output directory");

  // report
  std::filesystem::path rp_stats;
  auto* rp_cmd = app.add_subcommand(
      "report", "plain-text summary of a stats CSV (aggregate means, t-test)");
  rp_cmd->add_option("--stats", rp_stats, "stats CSV (from the stats command)")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (stats_cmd->parsed())
      return cmd_stats(stats_corpora, stats_out, common.jobs);
    if (n1_cmd->parsed()) return cmd_n1(n1_corpus);

    if (imp_cmd->parsed()) {
      auto cfg = effective_config(common, imp_table, imp_corpora, imp_out);
      ImputationOutcome out = run_imputation(cfg);
      std::cout << "expert " << out.n_expert << ", imputed " << out.n_imputed
                << ", failed " << out.failures.size() << "\n";
      for (const auto& [label, count] : out.totals)
        std::cout << label << "\t" << count << "\n";
      return 0;
    }

    if (hist_cmd->parsed()) {
      auto cfg = effective_config(common, {}, {}, hist_out);
      HistoricalOutcome out =
          run_historical_prediction(cfg, hist_train, hist_test);
      for (const auto& p : out.predictions)
        std::cout << p.language_code << "\t" << p.predicted << "\n";
      if (out.dropped_overlap > 0)
        std::cerr << "note: dropped " << out.dropped_overlap
                  << " training rows overlapping test languages\n";
      return 0;
    }

    if (an_cmd->parsed()) {
      auto cfg = effective_config(common, an_table, an_corpora, an_out);
      Weighting w = an_weighting == "type"    ? Weighting::Type
                    : an_weighting == "token" ? Weighting::Token
                                              : Weighting::Both;
      LengthOrderOutcome out = run_length_order_analysis(cfg, w);
      if (out.type_weighted) print_anova("type", *out.type_weighted);
      if (out.token_weighted) print_anova("token", *out.token_weighted);
      return 0;
    }

    if (rg_cmd->parsed()) {
      auto cfg = effective_config(common, rg_table, rg_corpora, rg_out);
      if (!rg_condition.empty()) cfg.condition = rg_condition;
      if (!rg_langlist.empty()) cfg.language_list = rg_langlist;
      if (!rg_families.empty()) cfg.family_list = rg_families;
      if (rg_min_family > 0) cfg.family_min_size = rg_min_family;
      VarianceOutcome out = run_variance_decomposition(cfg, !rg_no_area);
      render_table2({out.report}, std::cout);
      return 0;
    }

    if (rp_cmd->parsed()) {
      std::ifstream in(rp_stats);
      if (!in) throw IoError("cannot open " + rp_stats.string());
      auto stats = load_stats_csv(in);
      render_aggregate_summary(stats, std::cout);
      std::vector<double> args, preds;
      for (const auto& s : stats) {
        if (s.arg_len_type && s.pred_len_type) {
          args.push_back(*s.arg_len_type);
          preds.push_back(*s.pred_len_type);
        }
      }
      if (args.size() >= 2) {
        TestResult t = t_test_ind(args, preds);
        std::cout << "arg vs pred type-weighted t-test: t = "
                  << format_ratio(t.statistic) << ", df = "
                  << format_ratio(t.df1) << ", p = "
                  << format_p(t.p_value, t.log10_p) << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
