#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ordolex/corpus.hpp"

namespace ordolex {

// Source-tagset to WordClass mapping. Total over any input: unmapped tags
// fall to Other.
struct TagMap {
  std::map<std::string, WordClass, std::less<>> entries;

  WordClass resolve(std::string_view tag) const noexcept;

  // UPOS defaults: NOUN, PROPN, PRON, VERB, AUX; everything else is Other.
  static TagMap upos();
};

enum class OrderLabel : std::uint8_t { SV, VS, Free };

std::string_view order_label_name(OrderLabel l) noexcept;  // "SV","VS","free"

// Empty string -> nullopt. Unknown labels throw RowError.
std::optional<OrderLabel> parse_order_label(std::string_view s);

struct LanguageRecord {
  std::string language_code;
  std::string family;  // highest-level family node; empty = isolate
  std::string macroarea;
  double latitude = 0.0;
  double longitude = 0.0;
  std::optional<OrderLabel> order_label;  // absent = imputation target
};

// Vertical format: one token per line as FORM<TAB>TAG, sentences separated by
// a blank line, '#' lines are comments. Sentence ids are 1-based ordinals.
Corpus parse_vertical(std::istream& in, std::string language_code,
                      const TagMap& tags);

// CoNLL-U, consuming only ID/FORM/UPOS. Multiword ranges ("3-4") and empty
// nodes ("3.1") contribute no token. Sentence ids come from "# sent_id ="
// comments when present, 1-based ordinals otherwise.
Corpus parse_conllu_subset(std::istream& in, std::string language_code);

// Emits the vertical format with canonical tags; parse_vertical on the output
// with the UPOS map reproduces the corpus.
void write_vertical(const Corpus& corpus, std::ostream& out);

// CSV with header language_code,family,macroarea,latitude,longitude,order_label.
std::vector<LanguageRecord> load_language_table(std::istream& in);

// Dispatch on extension: ".conllu" is CoNLL-U, anything else vertical. The
// language code is taken from the file stem.
Corpus load_corpus_file(const std::filesystem::path& path, const TagMap& tags);

}  // namespace ordolex
