#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ordolex/report.hpp"

using namespace ordolex;

TEST_CASE("p-value formatting matches the scientific style") {
  CHECK(format_p(3.9e-05, std::log10(3.9e-05)) == "3.9e-05");
  CHECK(format_p(1.0, 0.0) == "1.0e+00");
  CHECK(format_p(7.8e-10, std::log10(7.8e-10)) == "7.8e-10");
  CHECK(format_p(0.227, std::log10(0.227)) == "2.3e-01");
  CHECK(format_p(8.3e-135, std::log10(8.3e-135)) == "8.3e-135");
}

TEST_CASE("underflowed p-values reconstruct from the log") {
  // log10 p = -400.30103 ~ 5.0e-401, far below double range
  CHECK(format_p(0.0, -400.0 + std::log10(5.0)) == "5.0e-400");
  // carry: mantissa 9.97 rounds to 10.0 -> 1.0 with a bumped exponent
  CHECK(format_p(0.0, -350.0 + std::log10(9.97)) == "1.0e-349");
}

TEST_CASE("measure formatting") {
  CHECK(format_measure(2.0) == "2.000000");
  CHECK(format_measure(4.51) == "4.510000");
  CHECK(format_measure(std::numeric_limits<double>::infinity()) == "inf");
}

namespace {

CorpusStats make_stats(const std::string& code, double n1, double arg_type) {
  CorpusStats s;
  s.language_code = code;
  s.n1_ratio_np = n1;
  s.arg_len_type = arg_type;
  s.unique_args = 10;
  s.n_sentences = 4;
  return s;
}

}  // namespace

TEST_CASE("emit_stats_csv sorts rows and leaves absent fields empty") {
  std::ostringstream out;
  emit_stats_csv({make_stats("zzz", 2.5, 6.0), make_stats("aaa", 1.5, 5.0)},
                 out);
  const std::string text = out.str();
  std::istringstream lines(text);
  std::string header, first, second;
  std::getline(lines, header);
  std::getline(lines, first);
  std::getline(lines, second);
  CHECK(header ==
        "language_code,n1_ratio_np,n1_ratio_ap,noun_len_type,verb_len_type,"
        "noun_len_token,verb_len_token,arg_len_type,pred_len_type,"
        "arg_len_token,pred_len_token,unique_args,unique_preds,n_sentences");
  CHECK(first.starts_with("aaa,1.500000,,"));
  CHECK(second.starts_with("zzz,2.500000,,"));
  CHECK(first.ends_with(",10,0,4"));
}

TEST_CASE("emit_stats_csv header-only for empty input") {
  std::ostringstream out;
  emit_stats_csv({}, out);
  CHECK(out.str().find('\n') == out.str().size() - 1);
}

TEST_CASE("emit_stats_csv is deterministic") {
  std::ostringstream a, b;
  auto stats = {make_stats("bbb", 2.0, 6.5), make_stats("aaa", 0.5, 4.0)};
  emit_stats_csv(stats, a);
  emit_stats_csv(stats, b);
  CHECK(a.str() == b.str());
}

TEST_CASE("stats csv round-trips") {
  std::ostringstream out;
  CorpusStats s = make_stats("abc", 3.25, 5.5);
  s.n1_ratio_ap = std::numeric_limits<double>::infinity();
  emit_stats_csv({s}, out);
  std::istringstream in(out.str());
  auto back = load_stats_csv(in);
  REQUIRE(back.size() == 1);
  CHECK(back[0].language_code == "abc");
  CHECK(*back[0].n1_ratio_np == doctest::Approx(3.25));
  CHECK(std::isinf(*back[0].n1_ratio_ap));
  CHECK_FALSE(back[0].noun_len_type.has_value());
  CHECK(back[0].unique_args == 10);
}

namespace {

HierarchicalStep step(int level, int n, double f, double p, bool with_change) {
  HierarchicalStep st;
  st.model_level = level;
  st.fit.n = n;
  st.fit.f_statistic = f;
  st.fit.f_p_value = p;
  st.fit.log10_f_p = std::log10(p);
  if (with_change) {
    st.f_change = f / 2;
    st.f_change_p = p * 10;
    st.f_change_log10_p = std::log10(p * 10);
  }
  return st;
}

}  // namespace

TEST_CASE("emit_table2 layout") {
  ConditionReport cr;
  cr.condition = "a";
  cr.steps = {step(1, 106, 45.85, 7.8e-10, false),
              step(2, 106, 20.40, 2.4e-12, true),
              step(3, 106, 16.70, 5.8e-12, true),
              step(4, 106, 13.40, 4.9e-12, true)};
  std::ostringstream out;
  emit_table2({cr}, out);
  std::istringstream lines(out.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "condition,model,n_obs,f_val,p_f,f_change,p_f_change");
  std::getline(lines, line);
  CHECK(line == "a,1,106,45.85,7.8e-10,,");  // first model: empty change cells
  std::getline(lines, line);
  CHECK(line.starts_with("a,2,106,20.40,2.4e-12,10.20,"));
  int rows = 2;
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("emit_feature_csv long format") {
  FeatureVector fv;
  fv.language_code = "eng";
  fv.feature_names = {"n1_ratio_np"};
  fv.values = {4.51};
  std::ostringstream out;
  emit_feature_csv({fv}, out);
  CHECK(out.str() ==
        "language_code,feature,value\neng,n1_ratio_np,4.510000\n");
}
