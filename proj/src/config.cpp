#include "decaycert/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "decaycert/error.hpp"

namespace decaycert {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || trim(end) != "")
    throw error("cli.ParseError", "bad number '" + text + "' for " + where);
  return v;
}

std::vector<double> parse_numbers(const std::string& text,
                                  const std::string& where) {
  std::vector<double> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    std::istringstream inner(item);
    std::string word;
    while (inner >> word) out.push_back(parse_double(word, where));
  }
  return out;
}

}  // namespace

Config Config::parse_string(const std::string& text) {
  Config cfg;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw error("cli.ParseError",
                    "unterminated section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty())
        throw error("cli.ParseError",
                    "empty section name at line " + std::to_string(lineno));
      cfg.sections_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw error("cli.ParseError",
                  "expected key = value at line " + std::to_string(lineno));
    if (section.empty())
      throw error("cli.ParseError",
                  "key outside any section at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw error("cli.ParseError", "empty key at line " + std::to_string(lineno));
    cfg.sections_[section][key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cli.ParseError", "cannot open config " + path);
  std::ostringstream body;
  body << in.rdbuf();
  return parse_string(body.str());
}

void Config::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw error("cli.ParseError", "override must be section.key=value");
  const std::string target = trim(assignment.substr(0, eq));
  const auto dot = target.find('.');
  if (dot == std::string::npos)
    throw error("cli.ParseError", "override must be section.key=value");
  sections_[target.substr(0, dot)][target.substr(dot + 1)] =
      trim(assignment.substr(eq + 1));
}

bool Config::has_section(const std::string& section) const {
  return sections_.count(section) > 0;
}

bool Config::has(const std::string& section, const std::string& key) const {
  auto it = sections_.find(section);
  return it != sections_.end() && it->second.count(key) > 0;
}

std::string Config::get_string(const std::string& section,
                               const std::string& key) const {
  auto it = sections_.find(section);
  if (it == sections_.end() || !it->second.count(key))
    throw error("cli.ParseError", "missing " + section + "." + key);
  return it->second.at(key);
}

std::string Config::get_string(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
  return has(section, key) ? get_string(section, key) : fallback;
}

double Config::get_double(const std::string& section, const std::string& key) const {
  return parse_double(get_string(section, key), section + "." + key);
}

double Config::get_double(const std::string& section, const std::string& key,
                          double fallback) const {
  return has(section, key) ? get_double(section, key) : fallback;
}

std::int64_t Config::get_int(const std::string& section, const std::string& key,
                             std::int64_t fallback) const {
  if (!has(section, key)) return fallback;
  return static_cast<std::int64_t>(get_double(section, key));
}

bool Config::get_bool(const std::string& section, const std::string& key,
                      bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get_string(section, key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw error("cli.ParseError", "bad boolean for " + section + "." + key);
}

std::vector<double> Config::get_list(const std::string& section,
                                     const std::string& key) const {
  return parse_numbers(get_string(section, key), section + "." + key);
}

std::vector<double> Config::get_list(const std::string& section,
                                     const std::string& key,
                                     std::vector<double> fallback) const {
  return has(section, key) ? get_list(section, key) : fallback;
}

std::vector<std::vector<double>> Config::get_matrix(const std::string& section,
                                                    const std::string& key) const {
  const std::string text = get_string(section, key);
  std::vector<std::vector<double>> rows;
  std::string row;
  std::istringstream is(text);
  while (std::getline(is, row, ';'))
    rows.push_back(parse_numbers(row, section + "." + key));
  if (rows.empty())
    throw error("cli.ParseError", "empty matrix for " + section + "." + key);
  return rows;
}

ScalarFn function_from_config(const Config& cfg, const std::string& name) {
  const std::string section = "function " + name;
  if (!cfg.has_section(section))
    throw error("cli.ParseError", "missing section [" + section + "]");
  const std::string kind = cfg.get_string(section, "kind");
  if (kind == "zero") return ScalarFn::zero();
  if (kind == "constant")
    return ScalarFn::constant(cfg.get_double(section, "value"));
  if (kind == "sine_plus_offset")
    return ScalarFn::sine_plus_offset(cfg.get_double(section, "amplitude"),
                                      cfg.get_double(section, "omega"),
                                      cfg.get_double(section, "offset"),
                                      cfg.get_double(section, "phase", 0.0));
  if (kind == "abs_sine")
    return ScalarFn::abs_sine(cfg.get_double(section, "amplitude"),
                              cfg.get_double(section, "omega"),
                              cfg.get_double(section, "phase", 0.0));
  if (kind == "piecewise_linear")
    return ScalarFn::piecewise_linear(cfg.get_list(section, "knots"),
                                      cfg.get_list(section, "values"));
  throw error("cli.ParseError", "unknown function kind '" + kind + "'");
}

}  // namespace decaycert
