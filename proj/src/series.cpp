#include "ddcrit/series.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>

#include "ddcrit/error.hpp"

namespace ddc {

void PriceSeries::validate() const {
  if (closes.size() != dates.size())
    throw ParseError(symbol + ": dates/closes length mismatch");
  if (closes.size() < 2)
    throw ParseError(symbol + ": need at least 2 rows, got " +
                     std::to_string(closes.size()));
  for (std::size_t i = 0; i < closes.size(); ++i) {
    if (!(closes[i] > 0.0) || !std::isfinite(closes[i]))
      throw ParseError(symbol + ": non-positive close at row " + std::to_string(i));
    if (i > 0 && !(dates[i - 1] < dates[i]))
      throw ParseError(symbol + ": dates not strictly increasing at row " +
                       std::to_string(i) + " (" + format_date(dates[i]) + ")");
  }
}

namespace {

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, delim)) out.push_back(field);
  if (!line.empty() && line.back() == delim) out.emplace_back();
  return out;
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

PriceSeries parse_price_file(std::istream& in, const CsvSchema& schema,
                             std::string symbol) {
  std::string line;
  // skip blank and comment lines before the header (synth output starts
  // with a "# ddcrit synth" provenance line)
  do {
    if (!std::getline(in, line))
      throw ParseError(symbol + ": empty input, header row required");
  } while (strip(line).empty() || strip(line)[0] == '#');

  const auto header = split_fields(line, schema.delimiter);
  std::ptrdiff_t date_col = -1, close_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = strip(header[i]);
    if (name == schema.date_column) date_col = static_cast<std::ptrdiff_t>(i);
    if (name == schema.close_column) close_col = static_cast<std::ptrdiff_t>(i);
  }
  if (date_col < 0)
    throw ParseError(symbol + ": date column '" + schema.date_column +
                     "' not found in header");
  if (close_col < 0)
    throw ParseError(symbol + ": close column '" + schema.close_column +
                     "' not found in header");

  struct Row {
    Date date;
    double close;
  };
  std::vector<Row> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = strip(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto fields = split_fields(line, schema.delimiter);
    const auto need = static_cast<std::size_t>(std::max(date_col, close_col)) + 1;
    if (fields.size() < need)
      throw ParseError(symbol + ": line " + std::to_string(lineno) +
                       ": expected at least " + std::to_string(need) + " fields, got " +
                       std::to_string(fields.size()));
    Row row;
    try {
      row.date = parse_date(strip(fields[static_cast<std::size_t>(date_col)]),
                            schema.date_format);
    } catch (const Error& e) {
      throw ParseError(symbol + ": line " + std::to_string(lineno) + ": " + e.what());
    }
    const std::string close_text = strip(fields[static_cast<std::size_t>(close_col)]);
    try {
      std::size_t used = 0;
      row.close = std::stod(close_text, &used);
      if (used != close_text.size()) throw std::invalid_argument(close_text);
    } catch (const std::exception&) {
      throw ParseError(symbol + ": line " + std::to_string(lineno) +
                       ": bad close value '" + close_text + "'");
    }
    if (!(row.close > 0.0))
      throw ParseError(symbol + ": line " + std::to_string(lineno) +
                       ": non-positive close " + close_text);
    rows.push_back(row);
  }
  if (rows.size() < 2)
    throw ParseError(symbol + ": need at least 2 data rows, got " +
                     std::to_string(rows.size()));

  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].date == rows[i - 1].date)
      throw ParseError(symbol + ": duplicate date " + format_date(rows[i].date));

  PriceSeries series;
  series.symbol = std::move(symbol);
  series.dates.reserve(rows.size());
  series.closes.reserve(rows.size());
  for (const Row& r : rows) {
    series.dates.push_back(r.date);
    series.closes.push_back(r.close);
  }
  series.validate();
  return series;
}

ReturnSeries log_returns(const PriceSeries& series) {
  series.validate();
  ReturnSeries out;
  out.values.reserve(series.size() - 1);
  for (std::size_t i = 1; i < series.size(); ++i)
    out.values.push_back(std::log(series.closes[i] / series.closes[i - 1]));
  return out;
}

double mean(std::span<const double> xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

double excess_kurtosis(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 4)
    throw DomainError("excess_kurtosis needs at least 4 points, got " +
                      std::to_string(n));
  const double m = mean(xs);
  double m2 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - m;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  if (m2 <= 0.0) throw DomainError("excess_kurtosis undefined for zero variance");
  return m4 / (m2 * m2) - 3.0;
}

SeriesStats series_summary(const PriceSeries& series) {
  const ReturnSeries returns = log_returns(series);
  SeriesStats stats;
  stats.n_returns = returns.values.size();
  stats.stddev = sample_stddev(returns.values);
  try {
    stats.excess_kurtosis = excess_kurtosis(returns.values);
  } catch (const DomainError&) {
    stats.excess_kurtosis = std::numeric_limits<double>::quiet_NaN();
  }
  stats.first_date = series.dates.front();
  stats.last_date = series.dates.back();
  return stats;
}

}  // namespace ddc
