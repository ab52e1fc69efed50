#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ordolex/corpus.hpp"

namespace ordolex {

enum class N1Basis { NounVerb, ArgumentPredicate };

// Per-language corpus statistics. Length/ratio fields are absent, not zero,
// when the corpus lacks the relevant class (or has no eligible sentence for
// the ratio). Ratio fields may hold +inf when no sentence is class-2-first.
struct CorpusStats {
  std::string language_code;
  std::optional<double> n1_ratio_np;  // noun-before-verb basis
  std::optional<double> n1_ratio_ap;  // argument-before-predicate basis
  std::optional<double> noun_len_type;
  std::optional<double> verb_len_type;
  std::optional<double> noun_len_token;
  std::optional<double> verb_len_token;
  std::optional<double> arg_len_type;
  std::optional<double> pred_len_type;
  std::optional<double> arg_len_token;
  std::optional<double> pred_len_token;
  std::size_t unique_args = 0;
  std::size_t unique_preds = 0;
  std::size_t n_sentences = 0;
};

// Ratio of sentences whose first basis-class-1 token precedes the first
// class-2 token to sentences with the opposite precedence. Sentences lacking
// either class are excluded; returns +inf when only class-1-first sentences
// exist. Throws NoEligibleSentences when no sentence has both classes.
double n1_ratio(const Corpus& corpus, N1Basis basis);

// Type-weighted means are over distinct NFC forms (case-sensitive); token-
// weighted means are over all occurrences. Unique counts and n_sentences are
// always filled; length fields for empty classes stay absent.
CorpusStats length_stats(const Corpus& corpus);

// length_stats plus both N1 bases; a ratio with no eligible sentences is
// recorded as absent rather than thrown.
CorpusStats compute_stats(const Corpus& corpus);

struct FieldSummary {
  double mean = 0.0;
  std::size_t n = 0;  // languages where the field is defined and finite
};

// Crosslinguistic arithmetic means per field, keyed by field name.
std::map<std::string, FieldSummary> aggregate_stats(
    const std::vector<CorpusStats>& stats);

// Field order used by CSV emission and aggregation.
const std::vector<std::string>& corpus_stats_fields();

std::optional<double> stats_field_value(const CorpusStats& s,
                                        const std::string& field);

}  // namespace ordolex
