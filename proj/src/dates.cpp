#include "ddcrit/dates.hpp"

#include <cctype>
#include <cstdio>

#include "ddcrit/error.hpp"

namespace ddc {

namespace {

int read_int(std::string_view text, std::size_t& pos, int max_digits) {
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
    throw ParseError("expected digit in date '" + std::string(text) + "'");
  int value = 0;
  int digits = 0;
  while (pos < text.size() && digits < max_digits &&
         std::isdigit(static_cast<unsigned char>(text[pos]))) {
    value = value * 10 + (text[pos] - '0');
    ++pos;
    ++digits;
  }
  return value;
}

}  // namespace

Date parse_date(std::string_view text, std::string_view format) {
  int year = -1, month = -1, day = -1;
  std::size_t pos = 0;
  for (std::size_t f = 0; f < format.size(); ++f) {
    if (format[f] == '%' && f + 1 < format.size()) {
      ++f;
      switch (format[f]) {
        case 'Y': year = read_int(text, pos, 4); break;
        case 'm': month = read_int(text, pos, 2); break;
        case 'd': day = read_int(text, pos, 2); break;
        default:
          throw ParseError(std::string("unsupported date format token %") + format[f]);
      }
    } else {
      if (pos >= text.size() || text[pos] != format[f])
        throw ParseError("date '" + std::string(text) + "' does not match format '" +
                         std::string(format) + "'");
      ++pos;
    }
  }
  if (pos != text.size())
    throw ParseError("trailing characters in date '" + std::string(text) + "'");
  if (year < 0 || month < 0 || day < 0)
    throw ParseError("date format '" + std::string(format) +
                     "' must contain %Y, %m and %d");
  Date d{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
         std::chrono::day{static_cast<unsigned>(day)}};
  if (!d.ok())
    throw ParseError("invalid calendar date '" + std::string(text) + "'");
  return d;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(d.year()),
                unsigned(d.month()), unsigned(d.day()));
  return buf;
}

Date shift_months(const Date& d, int delta) {
  using namespace std::chrono;
  year_month ym = d.year() / d.month();
  ym += months{delta};
  day dd = d.day();
  day last = year_month_day_last{ym.year(), month_day_last{ym.month()}}.day();
  if (dd > last) dd = last;
  return Date{ym.year(), ym.month(), dd};
}

}  // namespace ddc
