#include "decaycert/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "decaycert/error.hpp"

namespace decaycert {

std::string Report::format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void Report::set(const std::string& key, double value) {
  entries_[key] = format_double(value);
}

void Report::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

void Report::set(const std::string& key, const char* value) {
  entries_[key] = value;
}

void Report::set(const std::string& key, bool value) {
  entries_[key] = value ? "true" : "false";
}

void Report::set(const std::string& key, std::int64_t value) {
  entries_[key] = std::to_string(value);
}

void Report::set_undefined(const std::string& key) {
  entries_[key] = "undefined";
}

void Report::set_optional(const std::string& key,
                          const std::optional<double>& value) {
  if (value)
    set(key, *value);
  else
    set_undefined(key);
}

bool Report::has(const std::string& key) const { return entries_.count(key) > 0; }

const std::string& Report::raw(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw error("cli.MissingKey", key);
  return it->second;
}

void Report::write_structured(std::ostream& os) const {
  for (const auto& [key, value] : entries_) os << key << " = " << value << "\n";
}

void Report::write_text(std::ostream& os, const std::string& title) const {
  os << title << "\n";
  os << std::string(title.size(), '-') << "\n";
  std::size_t width = 0;
  for (const auto& [key, value] : entries_) width = std::max(width, key.size());
  for (const auto& [key, value] : entries_) {
    os << key << std::string(width - key.size(), ' ') << "  " << value << "\n";
  }
}

void emit_file(const std::string& dir, const std::string& name,
               const std::string& contents) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw error("cli.IoError", "cannot open " + path.string());
  out << contents;
  if (!out) throw error("cli.IoError", "write failed for " + path.string());
}

void emit_report(const Report& report, const std::string& title,
                 const std::string& dir) {
  std::ostringstream structured;
  report.write_structured(structured);
  emit_file(dir, "report.structured", structured.str());

  std::ostringstream text;
  report.write_text(text, title);
  emit_file(dir, "report.txt", text.str());
}

}  // namespace decaycert
