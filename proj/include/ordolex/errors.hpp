#pragma once

#include <stdexcept>
#include <string>

namespace ordolex {

// Base for all data-level failures. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define ORDOLEX_ERROR_TYPE(Name)                      \
  class Name : public Error {                         \
  public:                                             \
    using Error::Error;                               \
  }

// ingest
ORDOLEX_ERROR_TYPE(ParseError);      // malformed line, carries line number
ORDOLEX_ERROR_TYPE(DecodeError);     // invalid UTF-8
ORDOLEX_ERROR_TYPE(EmptyCorpus);
ORDOLEX_ERROR_TYPE(SchemaError);     // missing CSV column
ORDOLEX_ERROR_TYPE(RowError);        // bad CSV row, carries row number

// metrics / features
ORDOLEX_ERROR_TYPE(NoEligibleSentences);
ORDOLEX_ERROR_TYPE(MissingClass);
ORDOLEX_ERROR_TYPE(MissingStats);
ORDOLEX_ERROR_TYPE(MissingCoordinates);

// gnb
ORDOLEX_ERROR_TYPE(DegenerateClass);
ORDOLEX_ERROR_TYPE(NonFiniteFeature);
ORDOLEX_ERROR_TYPE(DimensionMismatch);

// stats
ORDOLEX_ERROR_TYPE(DomainError);
ORDOLEX_ERROR_TYPE(DegenerateSample);
ORDOLEX_ERROR_TYPE(DegenerateDesign);
ORDOLEX_ERROR_TYPE(RankDeficient);
ORDOLEX_ERROR_TYPE(Underdetermined);
ORDOLEX_ERROR_TYPE(NotNested);

// io / config
ORDOLEX_ERROR_TYPE(IoError);
ORDOLEX_ERROR_TYPE(ConfigError);

#undef ORDOLEX_ERROR_TYPE

}  // namespace ordolex
