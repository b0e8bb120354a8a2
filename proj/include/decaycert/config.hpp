#pragma once

#include <map>
#include <string>
#include <vector>

#include "decaycert/scalar_function.hpp"

namespace decaycert {

// Plain-text configuration: "[section]" headers, "key = value" pairs, '#'
// comments. No expression evaluation; coefficient functions come from the
// named registry (see function_from_config).
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text);

  // "section.key=value"
  void apply_override(const std::string& assignment);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;

  std::string get_string(const std::string& section, const std::string& key) const;
  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& section, const std::string& key) const;
  double get_double(const std::string& section, const std::string& key,
                    double fallback) const;
  std::int64_t get_int(const std::string& section, const std::string& key,
                       std::int64_t fallback) const;
  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const;
  std::vector<double> get_list(const std::string& section,
                               const std::string& key) const;
  std::vector<double> get_list(const std::string& section,
                               const std::string& key,
                               std::vector<double> fallback) const;
  // semicolon-separated rows of space/comma-separated numbers
  std::vector<std::vector<double>> get_matrix(const std::string& section,
                                              const std::string& key) const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

// Builds a scalar function from the section "[function <name>]" with keys:
//   kind = zero | constant | sine_plus_offset | abs_sine | piecewise_linear
//   constant:          value
//   sine_plus_offset:  amplitude, omega, offset, phase (default 0)
//   abs_sine:          amplitude, omega, phase (default 0)
//   piecewise_linear:  knots = t0,t1,..., values = v0,v1,...
ScalarFn function_from_config(const Config& cfg, const std::string& name);

}  // namespace decaycert
