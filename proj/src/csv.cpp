#include "ordolex/csv.hpp"

#include "ordolex/errors.hpp"

namespace ordolex {

bool CsvReader::next(std::vector<std::string>& row) {
  row.clear();
  int c = in_.get();
  // skip blank lines between records
  while (c == '\n' || c == '\r') {
    if (c == '\n') ++line_;
    c = in_.get();
  }
  if (c == EOF) return false;
  record_line_ = line_;

  std::string field;
  bool quoted = false;
  while (true) {
    if (quoted) {
      if (c == EOF) throw ParseError("unterminated quoted CSV field at line " +
                                     std::to_string(record_line_));
      if (c == '"') {
        int peek = in_.get();
        if (peek == '"') {
          field.push_back('"');
        } else {
          quoted = false;
          c = peek;
          continue;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(static_cast<char>(c));
      }
    } else {
      if (c == EOF || c == '\n') {
        if (!field.empty() && field.back() == '\r') field.pop_back();
        row.push_back(std::move(field));
        if (c == '\n') ++line_;
        return true;
      }
      if (c == ',') {
        row.push_back(std::move(field));
        field.clear();
      } else if (c == '"' && field.empty()) {
        quoted = true;
      } else {
        field.push_back(static_cast<char>(c));
      }
    }
    c = in_.get();
  }
}

std::string csv_escape(std::string_view field) {
  bool needs_quote = field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quote) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.push_back(',');
    out += csv_escape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

}  // namespace ordolex
