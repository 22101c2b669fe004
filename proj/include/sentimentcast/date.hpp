#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace sentimentcast {

/// Calendar day. Ordered, hashable through its day ordinal.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::year_month_day ymd) : days_(std::chrono::sys_days(ymd)) {}
  constexpr Date(int y, unsigned m, unsigned d)
      : Date(std::chrono::year_month_day{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}}) {}

  static constexpr Date from_ordinal(long days) {
    Date out;
    out.days_ = std::chrono::sys_days{std::chrono::days{days}};
    return out;
  }

  /// Days since 1970-01-01.
  constexpr long ordinal() const { return static_cast<long>(days_.time_since_epoch().count()); }

  constexpr std::chrono::year_month_day ymd() const { return std::chrono::year_month_day{days_}; }

  std::string iso() const {
    const auto v = ymd();
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(v.year()),
                  static_cast<unsigned>(v.month()), static_cast<unsigned>(v.day()));
    return buf;
  }

  friend constexpr auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

inline std::optional<Date> make_date(int y, int m, int d) {
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
                                  std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date(ymd);
}

}  // namespace detail

/// Strict YYYY-MM-DD.
inline std::optional<Date> parse_iso_date(std::string_view text) {
  text = detail::trim(text);
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = detail::parse_int(text.substr(0, 4));
  auto m = detail::parse_int(text.substr(5, 2));
  auto d = detail::parse_int(text.substr(8, 2));
  if (!y || !m || !d) return std::nullopt;
  return detail::make_date(*y, *m, *d);
}

/// Accepts ISO dates and headline-style dates such as
/// "Monday, March 14, 2016", "March 14, 2016" or "Mar 14 2016".
inline std::optional<Date> parse_loose_date(std::string_view text) {
  text = detail::trim(text);
  if (auto iso = parse_iso_date(text)) return iso;

  static constexpr std::array<std::string_view, 12> months = {
      "jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec"};

  // Split into alphanumeric words.
  std::array<std::string, 6> words;
  std::size_t count = 0;
  std::string current;
  for (char ch : text) {
    if (std::isalnum(static_cast<unsigned char>(ch))) {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    } else if (!current.empty()) {
      if (count == words.size()) return std::nullopt;
      words[count++] = std::move(current);
      current.clear();
    }
  }
  if (!current.empty()) {
    if (count == words.size()) return std::nullopt;
    words[count++] = std::move(current);
  }

  std::optional<int> month, day, year;
  for (std::size_t i = 0; i < count; ++i) {
    const std::string& w = words[i];
    if (std::isalpha(static_cast<unsigned char>(w[0]))) {
      if (month || w.size() < 3) continue;
      for (std::size_t k = 0; k < months.size(); ++k) {
        if (w.compare(0, 3, months[k]) == 0) month = static_cast<int>(k) + 1;
      }
    } else if (auto n = detail::parse_int(w)) {
      if (w.size() == 4 && !year) {
        year = *n;
      } else if (w.size() <= 2 && !day) {
        day = *n;
      } else {
        return std::nullopt;
      }
    } else {
      return std::nullopt;
    }
  }
  if (!month || !day || !year) return std::nullopt;
  return detail::make_date(*year, *month, *day);
}

}  // namespace sentimentcast
