#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace crowdfx {

/// Calendar day. All dates in the library are UTC days.
using Date = std::chrono::sys_days;

/// Wall-clock instant with one-second resolution.
using Timestamp = std::chrono::sys_seconds;

/// Parses `YYYY-MM-DD`. Throws std::invalid_argument on malformed or
/// impossible dates.
Date parse_date(std::string_view text);

std::string format_date(Date d);

/// Parses an RFC 3339 timestamp (`2022-06-01T12:30:00Z`,
/// `2022-06-01T12:30:00.250+02:00`). Fractional seconds are truncated.
Timestamp parse_timestamp(std::string_view text);

std::string format_timestamp(Timestamp t);

/// Last second of day `d`.
inline Timestamp end_of_day(Date d) {
  return Timestamp{d} + std::chrono::days{1} - std::chrono::seconds{1};
}

bool is_weekday(Date d);

/// Number of weekdays in the half-open interval (from, to]. Zero when
/// to <= from.
long weekdays_between(Date from, Date to);

/// Number of calendar days in (from, to]. Zero when to <= from.
long days_between(Date from, Date to);

}  // namespace crowdfx
