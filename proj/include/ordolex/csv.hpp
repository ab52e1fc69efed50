#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace ordolex {

// Comma-separated, double-quote escaped, LF line endings (CR tolerated on
// read). Quoted fields may span lines.
class CsvReader {
public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  // Reads the next record into `row`. Returns false at end of input.
  bool next(std::vector<std::string>& row);

  // 1-based line number where the last record started.
  int record_line() const noexcept { return record_line_; }

private:
  std::istream& in_;
  int line_ = 1;
  int record_line_ = 0;
};

// Quotes a field when it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

std::string csv_join(const std::vector<std::string>& fields);

}  // namespace ordolex
