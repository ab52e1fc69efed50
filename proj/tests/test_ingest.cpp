#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "ordolex/errors.hpp"
#include "ordolex/ingest.hpp"

using namespace ordolex;

namespace {

Corpus vertical(const std::string& text, const std::string& code = "tst") {
  std::istringstream in(text);
  return parse_vertical(in, code, TagMap::upos());
}

}  // namespace

TEST_CASE("parse_vertical basic sentence") {
  Corpus c = vertical("dogs\tNOUN\nbark\tVERB\n\n");
  REQUIRE(c.sentences.size() == 1);
  REQUIRE(c.sentences[0].tokens.size() == 2);
  CHECK(c.sentences[0].tokens[0] == Token{"dogs", WordClass::Noun});
  CHECK(c.sentences[0].tokens[1] == Token{"bark", WordClass::Verb});
  CHECK(c.sentences[0].id == "1");
}

TEST_CASE("parse_vertical empty stream is an error") {
  CHECK_THROWS_AS(vertical(""), EmptyCorpus);
  CHECK_THROWS_AS(vertical("# only comments\n\n"), EmptyCorpus);
}

TEST_CASE("parse_vertical unmapped tags become Other") {
  Corpus c = vertical("run\tVERB\nfast\tADV\n\nhe\tPRON\nran\tVERB\n\n");
  REQUIRE(c.sentences.size() == 2);
  CHECK(c.sentences[0].tokens[1].word_class == WordClass::Other);
  CHECK(c.sentences[1].tokens[0].word_class == WordClass::Pronoun);
}

TEST_CASE("parse_vertical reports the offending line") {
  try {
    vertical("ok\tNOUN\nbroken line\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("parse_vertical handles comments, CRLF, and missing final blank") {
  Corpus c = vertical("# header\r\ndog\tNOUN\r\nbarks\tVERB\r\n");
  REQUIRE(c.sentences.size() == 1);
  CHECK(c.sentences[0].tokens[0].form == "dog");
}

TEST_CASE("vertical round-trip reproduces the corpus") {
  std::mt19937 rng(42);
  const char* forms[] = {"ox", "tree", "mi", "bark", "ran", "so", "kupo"};
  const WordClass classes[] = {WordClass::Noun, WordClass::ProperNoun,
                               WordClass::Pronoun, WordClass::Verb,
                               WordClass::Auxiliary, WordClass::Other};
  for (int iter = 0; iter < 20; ++iter) {
    Corpus original{"tst", {}};
    std::uniform_int_distribution<int> n_sent(1, 6), n_tok(1, 8), f(0, 6),
        k(0, 5);
    const int sentences = n_sent(rng);
    for (int s = 0; s < sentences; ++s) {
      Sentence sent;
      sent.id = std::to_string(s + 1);
      const int tokens = n_tok(rng);
      for (int t = 0; t < tokens; ++t)
        sent.tokens.push_back(Token{forms[f(rng)], classes[k(rng)]});
      original.sentences.push_back(std::move(sent));
    }
    std::ostringstream out;
    write_vertical(original, out);
    Corpus reparsed = vertical(out.str());
    CHECK(reparsed == original);
  }
}

TEST_CASE("parse_conllu_subset maps ID/FORM/UPOS") {
  const std::string text =
      "# sent_id = v1\n"
      "# text = he ran\n"
      "1\the\the\tPRON\t_\t_\t0\t_\t_\t_\n"
      "2\tran\trun\tVERB\t_\t_\t1\t_\t_\t_\n"
      "\n";
  std::istringstream in(text);
  Corpus c = parse_conllu_subset(in, "tst");
  REQUIRE(c.sentences.size() == 1);
  CHECK(c.sentences[0].id == "v1");
  REQUIRE(c.sentences[0].tokens.size() == 2);
  CHECK(c.sentences[0].tokens[0].word_class == WordClass::Pronoun);
  CHECK(c.sentences[0].tokens[1].word_class == WordClass::Verb);
}

TEST_CASE("conllu ranges and empty nodes contribute no token") {
  const std::string text =
      "1\tvamonos\t_\tVERB\t_\t_\t0\t_\t_\t_\n"
      "3-4\tdu\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "3\tde\tde\tADP\t_\t_\t1\t_\t_\t_\n"
      "4\tle\tle\tDET\t_\t_\t3\t_\t_\t_\n"
      "4.1\telided\t_\tVERB\t_\t_\t_\t_\t_\t_\n"
      "5\tcamino\tcamino\tNOUN\t_\t_\t1\t_\t_\t_\n"
      "\n";
  std::istringstream in(text);
  Corpus c = parse_conllu_subset(in, "tst");
  REQUIRE(c.sentences.size() == 1);
  // token count equals the non-comment, non-range, non-empty-node lines
  CHECK(c.sentences[0].tokens.size() == 4);
  CHECK(c.sentences[0].tokens[0].form == "vamonos");
  CHECK(c.sentences[0].tokens[3].form == "camino");
}

TEST_CASE("conllu short lines are parse errors") {
  std::istringstream in("1\they\tPRON\n");
  CHECK_THROWS_AS(parse_conllu_subset(in, "tst"), ParseError);
}

TEST_CASE("conllu ordinal ids when sent_id missing") {
  const std::string text =
      "1\ta\t_\tNOUN\t_\t_\t_\t_\t_\t_\n\n"
      "1\tb\t_\tVERB\t_\t_\t_\t_\t_\t_\n\n";
  std::istringstream in(text);
  Corpus c = parse_conllu_subset(in, "tst");
  REQUIRE(c.sentences.size() == 2);
  CHECK(c.sentences[0].id == "1");
  CHECK(c.sentences[1].id == "2");
}

TEST_CASE("load_language_table parses records") {
  std::istringstream in(
      "language_code,family,macroarea,latitude,longitude,order_label\n"
      "eng,Indo-European,Eurasia,52.0,0.0,SV\n"
      "abc,,Papunesia,-5.25,144.0,\n"
      "xyz,\"Family, quoted\",Africa,3.5,10.25,free\n");
  auto records = load_language_table(in);
  REQUIRE(records.size() == 3);
  CHECK(records[0].language_code == "eng");
  CHECK(records[0].order_label == OrderLabel::SV);
  CHECK(records[0].latitude == doctest::Approx(52.0));
  CHECK(records[1].family.empty());  // isolate
  CHECK_FALSE(records[1].order_label.has_value());
  CHECK(records[2].family == "Family, quoted");
  CHECK(records[2].order_label == OrderLabel::Free);
}

TEST_CASE("load_language_table rejects bad schema and rows") {
  {
    std::istringstream in("language_code,family\nen,IE\n");
    CHECK_THROWS_AS(load_language_table(in), SchemaError);
  }
  {
    std::istringstream in(
        "language_code,family,macroarea,latitude,longitude,order_label\n"
        "eng,IE,Eurasia,not-a-number,0.0,SV\n");
    CHECK_THROWS_AS(load_language_table(in), RowError);
  }
  {
    std::istringstream in(
        "language_code,family,macroarea,latitude,longitude,order_label\n"
        "eng,IE,Eurasia,95.0,0.0,SV\n");
    CHECK_THROWS_AS(load_language_table(in), RowError);  // latitude range
  }
  {
    std::istringstream in(
        "language_code,family,macroarea,latitude,longitude,order_label\n"
        "eng,IE,Eurasia,5.0,0.0,SOV\n");
    CHECK_THROWS_AS(load_language_table(in), RowError);  // unknown label
  }
  {
    std::istringstream in(
        "language_code,family,macroarea,latitude,longitude,order_label\n"
        "ENG,IE,Eurasia,5.0,0.0,SV\n");
    CHECK_THROWS_AS(load_language_table(in), RowError);  // bad code
  }
  {
    std::istringstream in(
        "language_code,family,macroarea,latitude,longitude,order_label\n"
        "eng,IE,Eurasia,5.0,0.0,SV\neng,IE,Eurasia,5.0,0.0,SV\n");
    CHECK_THROWS_AS(load_language_table(in), RowError);  // duplicate code
  }
}

TEST_CASE("row errors carry the row number") {
  std::istringstream in(
      "language_code,family,macroarea,latitude,longitude,order_label\n"
      "eng,IE,Eurasia,1.0,2.0,SV\n"
      "fra,IE,Eurasia,bad,2.0,SV\n");
  try {
    load_language_table(in);
    FAIL("expected RowError");
  } catch (const RowError& e) {
    CHECK(std::string(e.what()).find("row 3") != std::string::npos);
  }
}
