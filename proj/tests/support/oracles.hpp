// Test-only reference implementations and data helpers. Everything here is
// deliberately naive (quadratic rescans, direct formula transcriptions) and
// independent of the library's algorithmic paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ddcrit/drawdown.hpp"
#include "ddcrit/rng.hpp"
#include "ddcrit/series.hpp"

namespace oracle {

// O(N*W) window maximum by rescanning at every index.
inline std::vector<double> trailing_max_naive(const ddc::PriceSeries& s,
                                              const ddc::WindowSpec& w) {
  const std::size_t n = s.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double best = s.closes[i];
    for (std::size_t j = 0; j < i; ++j) {
      bool inside;
      if (w.mode == ddc::WindowMode::trading_days) {
        inside = j + static_cast<std::size_t>(w.span) > i;
      } else {
        inside = s.dates[j] > ddc::shift_months(s.dates[i], -w.span);
      }
      if (inside) best = std::max(best, s.closes[j]);
    }
    out[i] = best;
  }
  return out;
}

// Explicit run scan over d, no shared code with segment_drawdowns.
inline std::vector<ddc::DrawdownEvent> segment_naive(
    const std::vector<double>& d, const ddc::PriceSeries& s,
    const std::vector<double>& ceiling) {
  std::vector<ddc::DrawdownEvent> events;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n;) {
    if (d[i] >= 0.0) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end < n && d[end] < 0.0) ++end;
    std::size_t trough = i;
    for (std::size_t j = i; j < end; ++j)
      if (d[j] < d[trough]) trough = j;
    ddc::DrawdownEvent ev;
    ev.start_index = (i == 0) ? 0 : i - 1;
    ev.trough_index = trough;
    ev.complete = end < n;
    ev.end_index = ev.complete ? end : n - 1;
    ev.depth_points = d[trough];
    ev.depth_rel = d[trough] / ceiling[trough];
    events.push_back(ev);
    i = end;
  }
  return events;
}

// Direct transcription of the population excess-kurtosis formula.
inline double kurtosis_naive(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  double m = 0.0;
  for (double x : xs) m += x;
  m /= n;
  double var = 0.0;
  for (double x : xs) var += (x - m) * (x - m);
  var /= n;
  const double sd = std::sqrt(var);
  double acc = 0.0;
  for (double x : xs) acc += std::pow((x - m) / sd, 4.0);
  return acc / n - 3.0;
}

// Random walk price series with occasional revisits of the running maximum,
// so that exact zeros of d occur away from new highs too.
inline ddc::PriceSeries random_series(std::uint64_t seed, std::size_t n) {
  ddc::Rng rng = ddc::Rng::substream(seed, 0xFEED);
  ddc::PriceSeries s;
  s.symbol = "RND" + std::to_string(seed);
  double price = 50.0 + 100.0 * rng.uniform01();
  double peak = price;
  using namespace std::chrono;
  sys_days day = sys_days{year{1995} / 1 / 2} + days{static_cast<int>(rng.below(2000))};
  for (std::size_t i = 0; i < n; ++i) {
    s.dates.emplace_back(year_month_day{day});
    day += days{1 + static_cast<int>(rng.below(4))};  // irregular calendar gaps
    s.closes.push_back(price);
    peak = std::max(peak, price);
    const double u = rng.uniform01();
    if (u < 0.08) {
      price = peak;  // exact touch of the old ceiling
    } else {
      price *= std::exp(rng.normal(0.0, 0.02));
    }
  }
  s.validate();
  return s;
}

// Mesokurtic body (Weibull shape 2.25, excess kurtosis ~0, mimicking the
// random-walk regime) with a Pareto tail grafted above the body's 95th
// percentile; the known graft point is returned through `graft`.
inline std::vector<double> mixture_magnitudes(std::uint64_t seed, std::size_t n_body,
                                              std::size_t n_tail, double body_scale,
                                              double tail_alpha, double* graft) {
  ddc::Rng rng = ddc::Rng::substream(seed, 0x4D4958);
  std::vector<double> body(n_body);
  for (double& x : body)
    x = body_scale * std::pow(-std::log(1.0 - rng.uniform01()), 1.0 / 2.25);
  std::vector<double> sorted = body;
  std::sort(sorted.begin(), sorted.end());
  const double q95 = sorted[static_cast<std::size_t>(0.95 * static_cast<double>(n_body))];
  if (graft != nullptr) *graft = q95;
  std::vector<double> out = body;
  for (std::size_t i = 0; i < n_tail; ++i) out.push_back(rng.pareto(tail_alpha, q95));
  return out;
}

// Price series whose complete drawdown depths are exactly the magnitudes in
// `mags` (each event: touch the ceiling, drop by the magnitude, recover to a
// marginally higher ceiling).
inline ddc::PriceSeries series_with_depths(const std::vector<double>& mags,
                                           std::uint64_t seed) {
  ddc::PriceSeries s;
  s.symbol = "MIX" + std::to_string(seed);
  using namespace std::chrono;
  sys_days day = sys_days{year{2000} / 1 / 3};
  double ceiling = 100.0;
  const auto push = [&](double price) {
    s.dates.emplace_back(year_month_day{day});
    s.closes.push_back(price);
    day += days{1};
  };
  push(ceiling);
  for (double x : mags) {
    const double depth = std::min(x, 0.95);
    push(ceiling * (1.0 - depth));
    ceiling *= 1.0001;
    push(ceiling);
  }
  s.validate();
  return s;
}

struct FixtureRow {
  std::string symbol;
  double n_tot, n_sup, n_inf, pct_sup, k_tot, k_sup, k_inf, x_max, x_min, r2, alpha,
      sigma;
};

struct Fixture {
  std::vector<FixtureRow> rows;  // 30 indices
  FixtureRow average, max, min;
};

inline Fixture load_table1(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  Fixture fx;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    FixtureRow r;
    std::string field;
    std::getline(ss, r.symbol, '\t');
    double* cols[] = {&r.n_tot, &r.n_sup, &r.n_inf, &r.pct_sup, &r.k_tot, &r.k_sup,
                      &r.k_inf, &r.x_max, &r.x_min, &r.r2,      &r.alpha, &r.sigma};
    for (double* c : cols) {
      std::getline(ss, field, '\t');
      *c = std::stod(field);
    }
    if (r.symbol == "AVERAGE") fx.average = r;
    else if (r.symbol == "MAX") fx.max = r;
    else if (r.symbol == "MIN") fx.min = r;
    else fx.rows.push_back(r);
  }
  return fx;
}

}  // namespace oracle
