#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ordolex {

// Coarse word-class taxonomy. Every token maps to exactly one class.
enum class WordClass : std::uint8_t {
  Noun,
  ProperNoun,
  Pronoun,
  Verb,
  Auxiliary,
  Other,
};

// Arguments are nominals including pronouns; predicates are main verbs.
// Auxiliaries belong to neither group.
constexpr bool is_argument(WordClass c) noexcept {
  return c == WordClass::Noun || c == WordClass::ProperNoun ||
         c == WordClass::Pronoun;
}
constexpr bool is_predicate(WordClass c) noexcept {
  return c == WordClass::Verb;
}

// Strict noun/verb grouping excludes pronouns.
constexpr bool is_noun_strict(WordClass c) noexcept {
  return c == WordClass::Noun || c == WordClass::ProperNoun;
}
constexpr bool is_verb_strict(WordClass c) noexcept {
  return c == WordClass::Verb;
}

// Canonical UPOS-style tag for serialization (NOUN, PROPN, PRON, VERB, AUX, X).
std::string_view word_class_tag(WordClass c) noexcept;

struct Token {
  std::string form;  // surface form, stored NFC-normalized
  WordClass word_class = WordClass::Other;

  bool operator==(const Token&) const = default;
};

// Validates and normalizes a surface form. Throws ParseError when the form is
// empty after trimming whitespace, DecodeError on invalid UTF-8.
Token make_token(std::string_view form, WordClass cls);

// Number of Unicode scalar values of the NFC-normalized form.
std::size_t token_length(const Token& t);

struct Sentence {
  std::string id;  // verse/sentence identifier, ordinal when unnamed
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;
};

struct Corpus {
  std::string language_code;  // ISO 639-3 or ad-hoc 3-letter code
  std::vector<Sentence> sentences;

  bool operator==(const Corpus&) const = default;
};

// Three lowercase ASCII letters.
bool valid_language_code(std::string_view code) noexcept;

}  // namespace ordolex
