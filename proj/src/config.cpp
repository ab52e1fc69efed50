#include <charconv>
#include <fstream>
#include <set>

#include "ordolex/errors.hpp"
#include "ordolex/experiments.hpp"

namespace ordolex {

namespace {

std::string_view trim(std::string_view s) noexcept {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// strips a trailing comment that is not inside a quoted string
std::string_view strip_comment(std::string_view s) noexcept {
  bool quoted = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') quoted = !quoted;
    if (s[i] == '#' && !quoted) return s.substr(0, i);
  }
  return s;
}

std::string unquote(std::string_view v, int lineno) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
    return std::string(v.substr(1, v.size() - 2));
  if (!v.empty() && v.front() == '"')
    throw ConfigError("unterminated string at line " + std::to_string(lineno));
  return std::string(v);
}

std::vector<std::string> parse_list(std::string_view v, int lineno) {
  std::vector<std::string> out;
  if (v.size() >= 2 && v.front() == '[' && v.back() == ']')
    v = v.substr(1, v.size() - 2);
  std::size_t start = 0;
  while (start <= v.size()) {
    std::size_t comma = v.find(',', start);
    std::string_view item = comma == std::string_view::npos
                                ? v.substr(start)
                                : v.substr(start, comma - start);
    item = trim(item);
    if (!item.empty()) out.push_back(unquote(item, lineno));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_number(std::string_view v, int lineno) {
  double d = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("expected a number at line " + std::to_string(lineno));
  return d;
}

bool parse_bool(std::string_view v, int lineno) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("expected true/false at line " + std::to_string(lineno));
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  const auto base = path.has_parent_path() ? path.parent_path()
                                           : std::filesystem::path(".");
  auto resolve = [&](std::string_view v, int lineno) {
    std::filesystem::path p = unquote(v, lineno);
    return p.is_absolute() || p.empty() ? p : base / p;
  };

  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(strip_comment(line));
    if (sv.empty()) continue;
    const std::size_t eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("expected key = value at line " + std::to_string(lineno));
    const std::string key{trim(sv.substr(0, eq))};
    const std::string_view value = trim(sv.substr(eq + 1));

    if (key == "corpus_dir")
      cfg.corpus_dir = resolve(value, lineno);
    else if (key == "language_table")
      cfg.language_table = resolve(value, lineno);
    else if (key == "condition")
      cfg.condition = unquote(value, lineno);
    else if (key == "family_min_size")
      cfg.family_min_size = static_cast<int>(parse_number(value, lineno));
    else if (key == "include_free")
      cfg.include_free = parse_bool(value, lineno);
    else if (key == "ratio_cap")
      cfg.ratio_cap = parse_number(value, lineno);
    else if (key == "output_dir")
      cfg.output_dir = resolve(value, lineno);
    else if (key == "language_list")
      cfg.language_list = resolve(value, lineno);
    else if (key == "family_list")
      cfg.family_list = parse_list(value, lineno);
    else if (key == "jobs")
      cfg.jobs = static_cast<unsigned>(parse_number(value, lineno));
    else
      throw ConfigError("unknown config key '" + key + "' at line " +
                        std::to_string(lineno));
  }
  if (cfg.family_min_size < 1)
    throw ConfigError("family_min_size must be >= 1");
  if (cfg.ratio_cap <= 1.0) throw ConfigError("ratio_cap must be > 1");
  return cfg;
}

ConditionFilter condition_filter(const ExperimentConfig& cfg) {
  ConditionFilter f;
  if (cfg.condition == "a") {
    if (cfg.language_list.empty())
      throw ConfigError("condition a needs a language_list file");
    std::ifstream in(cfg.language_list);
    if (!in)
      throw IoError("cannot open language list " + cfg.language_list.string());
    std::string line;
    while (std::getline(in, line)) {
      std::string_view sv = trim(line);
      if (sv.empty() || sv.front() == '#') continue;
      f.names.emplace_back(sv);
    }
    f.mode = ConditionFilter::Mode::LanguageList;
  } else if (cfg.condition == "b") {
    if (cfg.family_list.empty())
      throw ConfigError("condition b needs a family_list");
    f.mode = ConditionFilter::Mode::FamilyList;
    f.names = cfg.family_list;
  } else if (cfg.condition == "c") {
    f.mode = ConditionFilter::Mode::FamilyMinSize;
    f.min_size = 76;  // families with more than 75 members
  } else if (cfg.condition == "d") {
    f.mode = ConditionFilter::Mode::FamilyMinSize;
    f.min_size = 2;  // excludes isolates
  } else if (cfg.condition == "custom") {
    f.mode = ConditionFilter::Mode::FamilyMinSize;
    f.min_size = cfg.family_min_size;
  } else {
    throw ConfigError("unknown condition '" + cfg.condition + "'");
  }
  return f;
}

std::vector<LanguageRecord> apply_filter(
    const ConditionFilter& filter, const std::vector<LanguageRecord>& records) {
  std::vector<LanguageRecord> out;
  switch (filter.mode) {
    case ConditionFilter::Mode::LanguageList: {
      std::set<std::string> codes(filter.names.begin(), filter.names.end());
      for (const auto& r : records)
        if (codes.contains(r.language_code)) out.push_back(r);
      break;
    }
    case ConditionFilter::Mode::FamilyList: {
      std::set<std::string> fams(filter.names.begin(), filter.names.end());
      for (const auto& r : records)
        if (fams.contains(r.family)) out.push_back(r);
      break;
    }
    case ConditionFilter::Mode::FamilyMinSize: {
      std::map<std::string, int> sizes;
      for (const auto& r : records)
        if (!r.family.empty()) ++sizes[r.family];
      for (const auto& r : records) {
        const int size = r.family.empty() ? 1 : sizes[r.family];
        if (size >= filter.min_size) out.push_back(r);
      }
      break;
    }
  }
  return out;
}

}  // namespace ordolex
