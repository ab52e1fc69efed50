#include "ordolex/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "ordolex/csv.hpp"
#include "ordolex/errors.hpp"
#include "ordolex/unicode.hpp"

namespace ordolex {

WordClass TagMap::resolve(std::string_view tag) const noexcept {
  auto it = entries.find(tag);
  return it == entries.end() ? WordClass::Other : it->second;
}

TagMap TagMap::upos() {
  TagMap m;
  m.entries = {
      {"NOUN", WordClass::Noun},  {"PROPN", WordClass::ProperNoun},
      {"PRON", WordClass::Pronoun}, {"VERB", WordClass::Verb},
      {"AUX", WordClass::Auxiliary},
  };
  return m;
}

std::string_view order_label_name(OrderLabel l) noexcept {
  switch (l) {
    case OrderLabel::SV: return "SV";
    case OrderLabel::VS: return "VS";
    case OrderLabel::Free: break;
  }
  return "free";
}

std::optional<OrderLabel> parse_order_label(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (s == "SV") return OrderLabel::SV;
  if (s == "VS") return OrderLabel::VS;
  if (s == "free") return OrderLabel::Free;
  throw RowError("unknown order label '" + std::string(s) + "'");
}

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

std::string_view strip_cr(std::string_view line) noexcept {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

void finish_sentence(Corpus& corpus, Sentence& current) {
  if (!current.tokens.empty()) {
    if (current.id.empty())
      current.id = std::to_string(corpus.sentences.size() + 1);
    corpus.sentences.push_back(std::move(current));
  }
  current = Sentence{};
}

}  // namespace

Corpus parse_vertical(std::istream& in, std::string language_code,
                      const TagMap& tags) {
  Corpus corpus{std::move(language_code), {}};
  Sentence current;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = strip_cr(line);
    if (!valid_utf8(sv))
      throw DecodeError("invalid UTF-8 at line " + std::to_string(lineno));
    if (sv.empty()) {
      finish_sentence(corpus, current);
      continue;
    }
    if (sv.front() == '#') continue;
    auto fields = split_tabs(sv);
    if (fields.size() != 2)
      throw ParseError("expected FORM<TAB>TAG at line " +
                       std::to_string(lineno) + ", got " +
                       std::to_string(fields.size()) + " fields");
    try {
      current.tokens.push_back(make_token(fields[0], tags.resolve(fields[1])));
    } catch (const ParseError&) {
      throw ParseError("empty token form at line " + std::to_string(lineno));
    }
  }
  finish_sentence(corpus, current);
  if (corpus.sentences.empty())
    throw EmptyCorpus("no sentences in corpus '" + corpus.language_code + "'");
  return corpus;
}

Corpus parse_conllu_subset(std::istream& in, std::string language_code) {
  Corpus corpus{std::move(language_code), {}};
  Sentence current;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = strip_cr(line);
    if (!valid_utf8(sv))
      throw DecodeError("invalid UTF-8 at line " + std::to_string(lineno));
    if (sv.empty()) {
      finish_sentence(corpus, current);
      continue;
    }
    if (sv.front() == '#') {
      constexpr std::string_view kSentId = "# sent_id =";
      if (sv.substr(0, kSentId.size()) == kSentId) {
        std::string_view id = sv.substr(kSentId.size());
        while (!id.empty() && id.front() == ' ') id.remove_prefix(1);
        current.id = std::string(id);
      }
      continue;
    }
    auto fields = split_tabs(sv);
    if (fields.size() < 4)
      throw ParseError("expected >= 4 tab-separated fields at line " +
                       std::to_string(lineno));
    std::string_view id = fields[0];
    // multiword-token ranges and empty nodes carry no usable token
    if (id.find('-') != std::string_view::npos ||
        id.find('.') != std::string_view::npos)
      continue;
    static const TagMap upos = TagMap::upos();
    try {
      current.tokens.push_back(make_token(fields[1], upos.resolve(fields[3])));
    } catch (const ParseError&) {
      throw ParseError("empty token form at line " + std::to_string(lineno));
    }
  }
  finish_sentence(corpus, current);
  if (corpus.sentences.empty())
    throw EmptyCorpus("no sentences in corpus '" + corpus.language_code + "'");
  return corpus;
}

void write_vertical(const Corpus& corpus, std::ostream& out) {
  for (const Sentence& s : corpus.sentences) {
    for (const Token& t : s.tokens)
      out << t.form << '\t' << word_class_tag(t.word_class) << '\n';
    out << '\n';
  }
}

namespace {

double parse_coordinate(const std::string& s, const char* what, int row,
                        double lo, double hi) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw RowError(std::string("unparseable ") + what + " '" + s + "' at row " +
                   std::to_string(row));
  if (v < lo || v > hi)
    throw RowError(std::string(what) + " out of range at row " +
                   std::to_string(row));
  return v;
}

}  // namespace

std::vector<LanguageRecord> load_language_table(std::istream& in) {
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.next(row)) throw SchemaError("empty language table");

  const std::vector<std::string> required = {
      "language_code", "family",    "macroarea",
      "latitude",      "longitude", "order_label"};
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < row.size(); ++i) col[row[i]] = i;
  for (const auto& name : required)
    if (!col.contains(name))
      throw SchemaError("language table missing column '" + name + "'");

  std::vector<LanguageRecord> records;
  std::set<std::string> seen;
  int rowno = 1;
  while (reader.next(row)) {
    ++rowno;
    if (row.size() < required.size())
      throw RowError("short row at row " + std::to_string(rowno));
    LanguageRecord rec;
    rec.language_code = row[col["language_code"]];
    if (!valid_language_code(rec.language_code))
      throw RowError("invalid language code '" + rec.language_code +
                     "' at row " + std::to_string(rowno));
    if (!seen.insert(rec.language_code).second)
      throw RowError("duplicate language code '" + rec.language_code +
                     "' at row " + std::to_string(rowno));
    rec.family = row[col["family"]];
    rec.macroarea = row[col["macroarea"]];
    rec.latitude =
        parse_coordinate(row[col["latitude"]], "latitude", rowno, -90, 90);
    rec.longitude =
        parse_coordinate(row[col["longitude"]], "longitude", rowno, -180, 180);
    try {
      rec.order_label = parse_order_label(row[col["order_label"]]);
    } catch (const RowError& e) {
      throw RowError(std::string(e.what()) + " at row " + std::to_string(rowno));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

Corpus load_corpus_file(const std::filesystem::path& path, const TagMap& tags) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus file " + path.string());
  std::string code = path.stem().string();
  if (path.extension() == ".conllu")
    return parse_conllu_subset(in, std::move(code));
  return parse_vertical(in, std::move(code), tags);
}

}  // namespace ordolex
