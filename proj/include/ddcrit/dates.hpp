#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace ddc {

using Date = std::chrono::year_month_day;

// Parse `text` against a format string built from %Y, %m, %d tokens and
// literal separators, e.g. "%Y-%m-%d" or "%m/%d/%Y". Month and day may be
// one or two digits. Throws ParseError on mismatch or an invalid date.
Date parse_date(std::string_view text, std::string_view format = "%Y-%m-%d");

// ISO-8601, zero padded.
std::string format_date(const Date& d);

// Calendar-month shift with the day-of-month clamped to the target month's
// last day (Mar 31 - 1 month -> Feb 28/29).
Date shift_months(const Date& d, int delta);

inline std::chrono::sys_days to_days(const Date& d) {
  return std::chrono::sys_days{d};
}

}  // namespace ddc
