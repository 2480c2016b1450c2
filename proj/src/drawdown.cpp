#include "ddcrit/drawdown.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "ddcrit/error.hpp"

namespace ddc {

std::vector<double> trailing_max(const PriceSeries& series, const WindowSpec& window) {
  series.validate();
  if (window.span < 1) throw DomainError("window span must be >= 1");
  const std::size_t n = series.size();
  std::vector<double> out(n);
  std::deque<std::size_t> queue;  // indices, closes decreasing front to back
  for (std::size_t i = 0; i < n; ++i) {
    if (window.mode == WindowMode::calendar_months) {
      const Date cutoff = shift_months(series.dates[i], -window.span);
      while (!queue.empty() && !(series.dates[queue.front()] > cutoff))
        queue.pop_front();
    } else {
      while (!queue.empty() && queue.front() + static_cast<std::size_t>(window.span) <= i)
        queue.pop_front();
    }
    while (!queue.empty() && series.closes[queue.back()] <= series.closes[i])
      queue.pop_back();
    queue.push_back(i);
    out[i] = series.closes[queue.front()];
  }
  return out;
}

std::size_t warmup_length(const PriceSeries& series, const WindowSpec& window) {
  const std::size_t n = series.size();
  if (window.mode == WindowMode::trading_days)
    return std::min<std::size_t>(static_cast<std::size_t>(window.span) - 1, n);
  for (std::size_t i = 0; i < n; ++i)
    if (!(shift_months(series.dates[i], -window.span) < series.dates.front()))
      return i;
  return n;
}

std::vector<double> drawdown_curve(const PriceSeries& series,
                                   std::span<const double> ceiling) {
  if (ceiling.size() != series.size())
    throw DomainError("drawdown_curve: ceiling length " + std::to_string(ceiling.size()) +
                      " != series length " + std::to_string(series.size()));
  std::vector<double> d(series.size());
  for (std::size_t i = 0; i < series.size(); ++i)
    d[i] = series.closes[i] - ceiling[i];
  return d;
}

std::vector<DrawdownEvent> segment_drawdowns(std::span<const double> d,
                                             const PriceSeries& series,
                                             std::span<const double> ceiling) {
  if (d.size() != series.size() || ceiling.size() != series.size())
    throw DomainError("segment_drawdowns: input lengths differ");
  std::vector<DrawdownEvent> events;
  const std::size_t n = d.size();
  std::size_t i = 0;
  while (i < n) {
    if (!(d[i] < 0.0)) {
      ++i;
      continue;
    }
    // run of strictly negative d starting at i
    DrawdownEvent ev;
    ev.start_index = (i > 0) ? i - 1 : i;  // boundary zero when one exists
    std::size_t trough = i;
    std::size_t j = i;
    while (j < n && d[j] < 0.0) {
      if (d[j] < d[trough]) trough = j;
      ++j;
    }
    ev.trough_index = trough;
    if (j < n) {
      ev.end_index = j;  // d[j] == 0 terminates the excursion
      ev.complete = true;
    } else {
      ev.end_index = n - 1;  // series ends mid-drawdown
      ev.complete = false;
    }
    ev.depth_points = d[trough];
    ev.depth_rel = d[trough] / ceiling[trough];
    events.push_back(ev);
    i = j;
  }
  return events;
}

DrawdownSet collect_depths(const std::vector<DrawdownEvent>& events, DepthUnit unit,
                           bool include_incomplete) {
  DrawdownSet set;
  set.unit = unit;
  for (const DrawdownEvent& ev : events) {
    if (!ev.complete && !include_incomplete) continue;
    const double depth = (unit == DepthUnit::relative) ? ev.depth_rel : ev.depth_points;
    set.magnitudes.push_back(std::fabs(depth));
  }
  std::sort(set.magnitudes.begin(), set.magnitudes.end(), std::greater<double>());
  set.n_total = set.magnitudes.size();
  set.x_max = set.magnitudes.empty() ? 0.0 : set.magnitudes.front();
  return set;
}

std::vector<std::pair<std::size_t, double>> rank_size_points(const DrawdownSet& set) {
  if (set.magnitudes.empty()) throw DomainError("rank_size_points: empty drawdown set");
  std::vector<std::pair<std::size_t, double>> points;
  points.reserve(set.magnitudes.size());
  for (std::size_t r = 0; r < set.magnitudes.size(); ++r)
    points.emplace_back(r + 1, set.magnitudes[r]);
  return points;
}

}  // namespace ddc
