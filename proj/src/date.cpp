#include "crowdfx/date.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace crowdfx {

namespace {

int parse_fixed(std::string_view text, std::size_t pos, std::size_t len,
                std::string_view whole) {
  if (pos + len > text.size()) {
    throw std::invalid_argument("truncated date/time: '" + std::string(whole) + "'");
  }
  int value = 0;
  const char* first = text.data() + pos;
  const char* last = first + len;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw std::invalid_argument("bad digits in date/time: '" + std::string(whole) + "'");
  }
  return value;
}

void expect_char(std::string_view text, std::size_t pos, char c, std::string_view whole) {
  if (pos >= text.size() || text[pos] != c) {
    throw std::invalid_argument("malformed date/time: '" + std::string(whole) + "'");
  }
}

Date parse_date_prefix(std::string_view text, std::string_view whole) {
  const int y = parse_fixed(text, 0, 4, whole);
  expect_char(text, 4, '-', whole);
  const int m = parse_fixed(text, 5, 2, whole);
  expect_char(text, 7, '-', whole);
  const int d = parse_fixed(text, 8, 2, whole);
  const std::chrono::year_month_day ymd{std::chrono::year{y},
                                        std::chrono::month{static_cast<unsigned>(m)},
                                        std::chrono::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    throw std::invalid_argument("invalid calendar date: '" + std::string(whole) + "'");
  }
  return Date{ymd};
}

}  // namespace

Date parse_date(std::string_view text) {
  if (text.size() != 10) {
    throw std::invalid_argument("expected YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  return parse_date_prefix(text, text);
}

std::string format_date(Date d) {
  const std::chrono::year_month_day ymd{d};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

Timestamp parse_timestamp(std::string_view text) {
  if (text.size() < 20) {
    throw std::invalid_argument("expected RFC 3339 timestamp, got '" + std::string(text) + "'");
  }
  const Date day = parse_date_prefix(text, text);
  if (text[10] != 'T' && text[10] != 't' && text[10] != ' ') {
    throw std::invalid_argument("malformed timestamp: '" + std::string(text) + "'");
  }
  const int hh = parse_fixed(text, 11, 2, text);
  expect_char(text, 13, ':', text);
  const int mm = parse_fixed(text, 14, 2, text);
  expect_char(text, 16, ':', text);
  const int ss = parse_fixed(text, 17, 2, text);
  if (hh > 23 || mm > 59 || ss > 60) {
    throw std::invalid_argument("time of day out of range: '" + std::string(text) + "'");
  }
  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) {
      throw std::invalid_argument("empty fractional seconds: '" + std::string(text) + "'");
    }
  }
  if (pos >= text.size()) {
    throw std::invalid_argument("missing UTC offset: '" + std::string(text) + "'");
  }
  int offset_minutes = 0;
  if (text[pos] == 'Z' || text[pos] == 'z') {
    ++pos;
  } else if (text[pos] == '+' || text[pos] == '-') {
    const int sign = text[pos] == '-' ? -1 : 1;
    const int oh = parse_fixed(text, pos + 1, 2, text);
    expect_char(text, pos + 3, ':', text);
    const int om = parse_fixed(text, pos + 4, 2, text);
    offset_minutes = sign * (oh * 60 + om);
    pos += 6;
  } else {
    throw std::invalid_argument("bad UTC offset: '" + std::string(text) + "'");
  }
  if (pos != text.size()) {
    throw std::invalid_argument("trailing characters in timestamp: '" + std::string(text) + "'");
  }
  using namespace std::chrono;
  return Timestamp{day} + hours{hh} + minutes{mm} + seconds{ss} - minutes{offset_minutes};
}

std::string format_timestamp(Timestamp t) {
  const Date day = std::chrono::floor<std::chrono::days>(t);
  const std::chrono::hh_mm_ss tod{t - Timestamp{day}};
  char buf[64];
  std::snprintf(buf, sizeof buf, "T%02ld:%02ld:%02ldZ", static_cast<long>(tod.hours().count()),
                static_cast<long>(tod.minutes().count()),
                static_cast<long>(tod.seconds().count()));
  return format_date(day) + buf;
}

bool is_weekday(Date d) {
  const std::chrono::weekday wd{d};
  return wd != std::chrono::Saturday && wd != std::chrono::Sunday;
}

long days_between(Date from, Date to) {
  return to > from ? static_cast<long>((to - from).count()) : 0;
}

long weekdays_between(Date from, Date to) {
  if (to <= from) return 0;
  const long total = days_between(from, to);
  const long full_weeks = total / 7;
  long count = full_weeks * 5;
  for (Date d = from + std::chrono::days{full_weeks * 7 + 1}; d <= to; d += std::chrono::days{1}) {
    if (is_weekday(d)) ++count;
  }
  return count;
}

}  // namespace crowdfx
