#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "ddcrit/dates.hpp"

namespace ddc {

// Daily closing prices with their trading dates, strictly increasing,
// all closes positive, at least two points.
struct PriceSeries {
  std::string symbol;
  std::vector<Date> dates;
  std::vector<double> closes;

  std::size_t size() const { return closes.size(); }

  // Throws ParseError if any invariant is violated.
  void validate() const;
};

// Log returns r_i = ln(c_i / c_{i-1}); one fewer element than the prices.
struct ReturnSeries {
  std::vector<double> values;
};

// Per-series return statistics. excess_kurtosis is NaN when undefined
// (fewer than 4 returns or zero variance).
struct SeriesStats {
  std::size_t n_returns = 0;
  double stddev = 0.0;           // sample (N-1) standard deviation
  double excess_kurtosis = 0.0;  // population excess kurtosis, NaN if undefined
  Date first_date{};
  Date last_date{};
};

// Column layout of a delimited price file.
struct CsvSchema {
  char delimiter = ',';
  std::string date_column = "date";
  std::string close_column = "close";
  std::string date_format = "%Y-%m-%d";
};

// Reads a delimited text stream with a header row, sorts rows by date, and
// returns a validated series. Duplicate dates, non-positive prices and
// malformed rows are errors that name the offending line.
PriceSeries parse_price_file(std::istream& in, const CsvSchema& schema,
                             std::string symbol);

ReturnSeries log_returns(const PriceSeries& series);

// Population excess kurtosis: (1/N) sum(((x - mean)/sigma)^4) - 3 with the
// biased (N-denominator) sigma, so a Gaussian scores 0. Throws DomainError
// for fewer than 4 points or zero variance.
double excess_kurtosis(std::span<const double> xs);

double mean(std::span<const double> xs);
double sample_stddev(std::span<const double> xs);  // N-1 denominator

SeriesStats series_summary(const PriceSeries& series);

}  // namespace ddc
