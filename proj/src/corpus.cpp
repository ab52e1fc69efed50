#include "ordolex/corpus.hpp"

#include "ordolex/errors.hpp"
#include "ordolex/unicode.hpp"

namespace ordolex {

std::string_view word_class_tag(WordClass c) noexcept {
  switch (c) {
    case WordClass::Noun: return "NOUN";
    case WordClass::ProperNoun: return "PROPN";
    case WordClass::Pronoun: return "PRON";
    case WordClass::Verb: return "VERB";
    case WordClass::Auxiliary: return "AUX";
    case WordClass::Other: break;
  }
  return "X";
}

namespace {

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Token make_token(std::string_view form, WordClass cls) {
  std::string_view trimmed = trim(form);
  if (trimmed.empty()) throw ParseError("empty token form");
  return Token{nfc(trimmed), cls};
}

std::size_t token_length(const Token& t) {
  // Forms are normalized at construction; the quick-check path makes this a
  // plain scalar count for tokens that are already NFC.
  return nfc_scalar_count(t.form);
}

bool valid_language_code(std::string_view code) noexcept {
  if (code.size() != 3) return false;
  for (char c : code)
    if (c < 'a' || c > 'z') return false;
  return true;
}

}  // namespace ordolex
