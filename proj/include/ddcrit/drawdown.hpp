#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ddcrit/series.hpp"

namespace ddc {

enum class WindowMode { calendar_months, trading_days };
enum class Warmup { expanding, skip };

// Trailing-ceiling window. Calendar mode covers all trading days whose date
// lies in (date_i - span months, date_i]; trading-day mode covers the last
// `span` rows. The current day is always inside the window, so the
// difference curve never exceeds zero.
struct WindowSpec {
  WindowMode mode = WindowMode::calendar_months;
  int span = 6;
  Warmup warmup = Warmup::expanding;
};

// One excursion of d = close - ceiling below zero. start_index is the last
// index with d == 0 before the run (or the run start when the series opens
// below the ceiling); end_index is the index where d returns to 0, or the
// last index of the run when the series ends mid-drawdown (complete=false).
struct DrawdownEvent {
  std::size_t start_index = 0;
  std::size_t trough_index = 0;
  std::size_t end_index = 0;
  double depth_points = 0.0;  // min of d over the event, <= 0, price units
  double depth_rel = 0.0;     // depth_points / ceiling at the trough, <= 0
  bool complete = true;
};

enum class DepthUnit { relative, points };

// Rank-ordered drawdown magnitudes, deepest first.
struct DrawdownSet {
  std::vector<double> magnitudes;  // |depth|, sorted descending
  std::size_t n_total = 0;
  double x_max = 0.0;
  DepthUnit unit = DepthUnit::relative;
};

// Maximum close over the trailing window ending at each index. While the
// window is not yet full the maximum runs over all available history
// (expanding); warmup trimming is the caller's job, see warmup_length.
std::vector<double> trailing_max(const PriceSeries& series, const WindowSpec& window);

// d_i = close_i - ceiling_i. Throws DomainError on length mismatch.
std::vector<double> drawdown_curve(const PriceSeries& series,
                                   std::span<const double> ceiling);

// Maximal runs of strictly negative d become events.
std::vector<DrawdownEvent> segment_drawdowns(std::span<const double> d,
                                             const PriceSeries& series,
                                             std::span<const double> ceiling);

DrawdownSet collect_depths(const std::vector<DrawdownEvent>& events, DepthUnit unit,
                           bool include_incomplete);

// (rank, magnitude) pairs, rank 1 = deepest. Throws DomainError when empty.
std::vector<std::pair<std::size_t, double>> rank_size_points(const DrawdownSet& set);

// Number of leading indices that do not yet see a full window.
std::size_t warmup_length(const PriceSeries& series, const WindowSpec& window);

}  // namespace ddc
