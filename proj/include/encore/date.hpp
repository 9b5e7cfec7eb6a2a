#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace encore {

// Proleptic Gregorian calendar date. Arithmetic goes through the civil-day
// count (days since 1970-01-01), using Howard Hinnant's algorithms.
struct Date {
  int year = 1970;
  int month = 1;  // 1..12
  int day = 1;    // 1..31

  auto operator<=>(const Date&) const = default;

  static bool is_leap(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  }

  static int days_in_month(int y, int m) {
    static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap(y)) return 29;
    return kDays[m - 1];
  }

  bool valid() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
  }

  long to_days() const {
    int y = year - (month <= 2);
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(month + (month > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(day) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
  }

  static Date from_days(long z) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long y = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp < 10 ? mp + 3 : mp - 9;
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
  }

  Date plus_days(long n) const { return from_days(to_days() + n); }

  // ISO weekday, Mon=1 .. Sun=7. 1970-01-01 was a Thursday.
  int day_of_week() const {
    long z = to_days();
    return static_cast<int>(((z % 7) + 10) % 7) + 1;
  }

  int day_of_year() const {
    return static_cast<int>(to_days() - Date{year, 1, 1}.to_days()) + 1;
  }

  // Number of ISO weeks (52 or 53) in ISO year y.
  static int iso_weeks_in_year(int y) {
    auto p = [](int yy) { return (yy + yy / 4 - yy / 100 + yy / 400) % 7; };
    return (p(y) == 4 || p(y - 1) == 3) ? 53 : 52;
  }

  // ISO-8601 week number, 1..53. Dates near year boundaries may belong to
  // an adjacent ISO year's week.
  int iso_week() const {
    int w = (day_of_year() - day_of_week() + 10) / 7;
    if (w < 1) return iso_weeks_in_year(year - 1);
    if (w > iso_weeks_in_year(year)) return 1;
    return w;
  }

  // Strict ISO-8601 "YYYY-MM-DD".
  static std::optional<Date> parse(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto num = [&](size_t pos, size_t len, int& out) {
      auto [p, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
      return ec == std::errc() && p == s.data() + pos + len;
    };
    Date dt;
    if (!num(0, 4, dt.year) || !num(5, 2, dt.month) || !num(8, 2, dt.day)) return std::nullopt;
    if (!dt.valid()) return std::nullopt;
    return dt;
  }

  std::string to_string() const {
    char buf[11];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
  }
};

}  // namespace encore
