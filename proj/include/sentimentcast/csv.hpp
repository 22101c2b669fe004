#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sentimentcast/error.hpp"

namespace sentimentcast::csv {

struct Record {
  std::size_t line = 0;  // 1-based line of the record's first character
  std::vector<std::string> fields;
};

/// Splits CSV text into records. Handles quoted fields, doubled quotes,
/// CRLF and LF line endings. Blank lines are skipped.
inline std::vector<Record> parse(std::string_view text) {
  std::vector<Record> records;
  Record rec;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;
  rec.line = 1;

  auto end_record = [&] {
    if (field_started || !rec.fields.empty() || !field.empty()) {
      rec.fields.push_back(std::move(field));
      records.push_back(std::move(rec));
    }
    rec = Record{};
    field.clear();
    field_started = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        rec.fields.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        rec.line = line;
        break;
      default:
        field.push_back(ch);
        field_started = true;
    }
  }
  end_record();
  return records;
}

inline std::string trim_copy(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

inline std::string lower_copy(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

/// Header lookup: case-insensitive, surrounding whitespace ignored.
class Header {
 public:
  explicit Header(const Record& rec) {
    for (const auto& f : rec.fields) names_.push_back(lower_copy(trim_copy(f)));
  }

  std::optional<std::size_t> find(std::string_view name) const {
    const std::string key = lower_copy(trim_copy(name));
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == key) return i;
    }
    return std::nullopt;
  }

  std::size_t require(std::string_view name) const {
    if (auto idx = find(name)) return *idx;
    throw Error(ErrorKind::schema, "missing column '" + std::string(name) + "'");
  }

  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
};

inline std::optional<double> parse_double(std::string_view s) {
  std::string t = trim_copy(s);
  if (t.empty()) return std::nullopt;
  const char* first = t.data();
  if (*first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

inline std::optional<long long> parse_integer(std::string_view s) {
  std::string t = trim_copy(s);
  if (t.empty()) return std::nullopt;
  long long value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size()) return std::nullopt;
  return value;
}

/// Shortest decimal text that parses back to exactly the same double.
inline std::string format_exact(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

inline std::string format_fixed(double value, int decimals) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, decimals);
  std::string out(buf, ptr);
  if (out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') out.erase(0, 1);
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "file not found: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorKind::io, "write failed: " + path);
}

}  // namespace sentimentcast::csv
