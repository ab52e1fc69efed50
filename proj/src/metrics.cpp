#include "ordolex/metrics.hpp"

#include <cmath>
#include <limits>
#include <unordered_set>

#include "ordolex/errors.hpp"

namespace ordolex {

namespace {

using ClassPredicate = bool (*)(WordClass) noexcept;

struct BasisPredicates {
  ClassPredicate first_class;
  ClassPredicate second_class;
};

BasisPredicates predicates_for(N1Basis basis) noexcept {
  if (basis == N1Basis::NounVerb) return {&is_noun_strict, &is_verb_strict};
  return {&is_argument, &is_predicate};
}

// Accumulates type- and token-weighted length means for one class predicate.
struct ClassAccumulator {
  std::unordered_set<std::string_view> forms;
  double type_len_sum = 0.0;
  double token_len_sum = 0.0;
  std::size_t token_count = 0;

  void add(const Token& t) {
    const auto len = static_cast<double>(token_length(t));
    token_len_sum += len;
    ++token_count;
    if (forms.insert(t.form).second) type_len_sum += len;
  }

  std::optional<double> type_mean() const {
    if (forms.empty()) return std::nullopt;
    return type_len_sum / static_cast<double>(forms.size());
  }
  std::optional<double> token_mean() const {
    if (token_count == 0) return std::nullopt;
    return token_len_sum / static_cast<double>(token_count);
  }
};

}  // namespace

double n1_ratio(const Corpus& corpus, N1Basis basis) {
  const auto [first_class, second_class] = predicates_for(basis);
  std::size_t class1_first = 0, class2_first = 0;
  for (const Sentence& s : corpus.sentences) {
    std::size_t i1 = s.tokens.size(), i2 = s.tokens.size();
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      WordClass c = s.tokens[i].word_class;
      if (i1 == s.tokens.size() && first_class(c)) i1 = i;
      if (i2 == s.tokens.size() && second_class(c)) i2 = i;
      if (i1 < s.tokens.size() && i2 < s.tokens.size()) break;
    }
    if (i1 == s.tokens.size() || i2 == s.tokens.size()) continue;
    if (i1 < i2)
      ++class1_first;
    else
      ++class2_first;
  }
  if (class1_first == 0 && class2_first == 0)
    throw NoEligibleSentences("no sentence in '" + corpus.language_code +
                              "' contains both basis classes");
  if (class2_first == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(class1_first) / static_cast<double>(class2_first);
}

CorpusStats length_stats(const Corpus& corpus) {
  if (corpus.sentences.empty())
    throw EmptyCorpus("corpus '" + corpus.language_code + "' has no sentences");
  ClassAccumulator nouns, verbs, args, preds;
  for (const Sentence& s : corpus.sentences) {
    for (const Token& t : s.tokens) {
      WordClass c = t.word_class;
      if (is_noun_strict(c)) nouns.add(t);
      if (is_verb_strict(c)) verbs.add(t);
      if (is_argument(c)) args.add(t);
      if (is_predicate(c)) preds.add(t);
    }
  }
  CorpusStats st;
  st.language_code = corpus.language_code;
  st.noun_len_type = nouns.type_mean();
  st.verb_len_type = verbs.type_mean();
  st.noun_len_token = nouns.token_mean();
  st.verb_len_token = verbs.token_mean();
  st.arg_len_type = args.type_mean();
  st.pred_len_type = preds.type_mean();
  st.arg_len_token = args.token_mean();
  st.pred_len_token = preds.token_mean();
  st.unique_args = args.forms.size();
  st.unique_preds = preds.forms.size();
  st.n_sentences = corpus.sentences.size();
  return st;
}

CorpusStats compute_stats(const Corpus& corpus) {
  CorpusStats st = length_stats(corpus);
  try {
    st.n1_ratio_np = n1_ratio(corpus, N1Basis::NounVerb);
  } catch (const NoEligibleSentences&) {
  }
  try {
    st.n1_ratio_ap = n1_ratio(corpus, N1Basis::ArgumentPredicate);
  } catch (const NoEligibleSentences&) {
  }
  return st;
}

const std::vector<std::string>& corpus_stats_fields() {
  static const std::vector<std::string> fields = {
      "n1_ratio_np",  "n1_ratio_ap",  "noun_len_type",  "verb_len_type",
      "noun_len_token", "verb_len_token", "arg_len_type",   "pred_len_type",
      "arg_len_token",  "pred_len_token", "unique_args",    "unique_preds",
      "n_sentences"};
  return fields;
}

std::optional<double> stats_field_value(const CorpusStats& s,
                                        const std::string& field) {
  if (field == "n1_ratio_np") return s.n1_ratio_np;
  if (field == "n1_ratio_ap") return s.n1_ratio_ap;
  if (field == "noun_len_type") return s.noun_len_type;
  if (field == "verb_len_type") return s.verb_len_type;
  if (field == "noun_len_token") return s.noun_len_token;
  if (field == "verb_len_token") return s.verb_len_token;
  if (field == "arg_len_type") return s.arg_len_type;
  if (field == "pred_len_type") return s.pred_len_type;
  if (field == "arg_len_token") return s.arg_len_token;
  if (field == "pred_len_token") return s.pred_len_token;
  if (field == "unique_args") return static_cast<double>(s.unique_args);
  if (field == "unique_preds") return static_cast<double>(s.unique_preds);
  if (field == "n_sentences") return static_cast<double>(s.n_sentences);
  throw Error("unknown stats field '" + field + "'");
}

std::map<std::string, FieldSummary> aggregate_stats(
    const std::vector<CorpusStats>& stats) {
  if (stats.empty()) throw Error("aggregate_stats over empty list");
  std::map<std::string, FieldSummary> out;
  for (const auto& field : corpus_stats_fields()) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const CorpusStats& s : stats) {
      auto v = stats_field_value(s, field);
      if (v && std::isfinite(*v)) {
        sum += *v;
        ++n;
      }
    }
    out[field] = FieldSummary{n ? sum / static_cast<double>(n) : 0.0, n};
  }
  return out;
}

}  // namespace ordolex
