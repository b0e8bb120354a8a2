#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace decaycert {

// Flat key-value report with byte-stable serialization: keys are sorted,
// floats carry 17 significant digits, absent constants print as the token
// "undefined" (never NaN text).
class Report {
 public:
  void set(const std::string& key, double value);
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value);
  void set(const std::string& key, bool value);
  void set(const std::string& key, std::int64_t value);
  void set_undefined(const std::string& key);
  void set_optional(const std::string& key, const std::optional<double>& value);

  bool has(const std::string& key) const;
  const std::string& raw(const std::string& key) const;

  // "key = value" lines, sorted by key
  void write_structured(std::ostream& os) const;
  void write_text(std::ostream& os, const std::string& title) const;

  static std::string format_double(double v);

 private:
  std::map<std::string, std::string> entries_;
};

// Writes both report.txt and report.structured under dir (created if absent).
void emit_report(const Report& report, const std::string& title,
                 const std::string& dir);

// Writes a named artifact file under dir with exactly the given contents.
void emit_file(const std::string& dir, const std::string& name,
               const std::string& contents);

}  // namespace decaycert
