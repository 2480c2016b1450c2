#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ddcrit/drawdown.hpp"
#include "ddcrit/error.hpp"
#include "ddcrit/rng.hpp"
#include "support/oracles.hpp"

using namespace ddc;

namespace {

PriceSeries daily(std::vector<double> closes) {
  PriceSeries s;
  s.symbol = "T";
  using namespace std::chrono;
  sys_days day = sys_days{year{2020} / 1 / 1};
  for (std::size_t i = 0; i < closes.size(); ++i) {
    s.dates.emplace_back(year_month_day{day});
    day += days{1};
  }
  s.closes = std::move(closes);
  return s;
}

}  // namespace

TEST_CASE("trailing_max: increasing series is its own ceiling") {
  const PriceSeries s = daily({1, 2, 3, 4, 5, 6});
  const auto m = trailing_max(s, {});
  CHECK(m == s.closes);
}

TEST_CASE("trailing_max: hand-traced trading-day window") {
  const PriceSeries s = daily({10, 9, 8, 7, 6, 5});
  const WindowSpec w{WindowMode::trading_days, 3, Warmup::expanding};
  CHECK(trailing_max(s, w) == std::vector<double>{10, 10, 10, 9, 8, 7});
}

TEST_CASE("trailing_max: matches the naive rescan on random data, both modes") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const PriceSeries s = oracle::random_series(seed, 5000);
    for (const WindowSpec w : {WindowSpec{WindowMode::calendar_months, 6, Warmup::expanding},
                               WindowSpec{WindowMode::trading_days, 126, Warmup::expanding},
                               WindowSpec{WindowMode::calendar_months, 1, Warmup::expanding}}) {
      CHECK(trailing_max(s, w) == oracle::trailing_max_naive(s, w));
    }
  }
}

TEST_CASE("trailing_max: ceiling never below the close") {
  const PriceSeries s = oracle::random_series(77, 2000);
  const auto m = trailing_max(s, {});
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(m[i] >= s.closes[i]);
}

TEST_CASE("drawdown_curve: trivial and hand-traced values") {
  const PriceSeries inc = daily({1, 2, 3});
  CHECK(drawdown_curve(inc, trailing_max(inc, {})) == std::vector<double>{0, 0, 0});

  const PriceSeries s = daily({100, 90, 95, 101});
  const std::vector<double> ceiling{100, 100, 100, 101};
  CHECK(drawdown_curve(s, ceiling) == std::vector<double>{0, -10, -5, 0});

  CHECK_THROWS_AS(drawdown_curve(s, std::vector<double>{1, 2}), DomainError);
}

TEST_CASE("drawdown_curve: bounded by zero and minus the ceiling") {
  const PriceSeries s = oracle::random_series(5, 1000);
  const auto ceiling = trailing_max(s, {});
  const auto d = drawdown_curve(s, ceiling);
  const double dmax = *std::max_element(d.begin(), d.end());
  const double dmin = *std::min_element(d.begin(), d.end());
  CHECK(dmax == 0.0);
  CHECK(dmin >= -*std::max_element(ceiling.begin(), ceiling.end()));
}

TEST_CASE("segment_drawdowns: hand-traced two-event example") {
  const PriceSeries s = daily({100, 90, 95, 101, 99, 101});
  const std::vector<double> ceiling{100, 100, 100, 101, 101, 101};
  const std::vector<double> d{0, -10, -5, 0, -2, 0};
  const auto events = segment_drawdowns(d, s, ceiling);
  REQUIRE(events.size() == 2);
  CHECK(events[0].complete);
  CHECK(events[0].start_index == 0);
  CHECK(events[0].trough_index == 1);
  CHECK(events[0].end_index == 3);
  CHECK(events[0].depth_points == -10.0);
  CHECK(events[0].depth_rel == doctest::Approx(-0.10).epsilon(1e-12));
  CHECK(events[1].depth_rel == doctest::Approx(-2.0 / 101.0).epsilon(1e-12));
}

TEST_CASE("segment_drawdowns: all-zero curve yields no events") {
  const PriceSeries s = daily({1, 1, 1});
  CHECK(segment_drawdowns(std::vector<double>{0, 0, 0}, s,
                          std::vector<double>{1, 1, 1})
            .empty());
}

TEST_CASE("segment_drawdowns: trailing negative run is incomplete") {
  const PriceSeries s = daily({100, 90, 80});
  const std::vector<double> ceiling{100, 100, 100};
  const auto events =
      segment_drawdowns(std::vector<double>{0, -10, -20}, s, ceiling);
  REQUIRE(events.size() == 1);
  CHECK_FALSE(events[0].complete);
  CHECK(events[0].end_index == 2);
  CHECK(events[0].depth_points == -20.0);
}

TEST_CASE("segment_drawdowns: zero-boundary property on random series") {
  const PriceSeries s = oracle::random_series(13, 3000);
  const auto ceiling = trailing_max(s, {});
  const auto d = drawdown_curve(s, ceiling);
  const auto events = segment_drawdowns(d, s, ceiling);
  CHECK(!events.empty());
  for (const auto& ev : events) {
    if (ev.start_index < ev.trough_index) CHECK(d[ev.start_index] == 0.0);
    if (ev.complete) CHECK(d[ev.end_index] == 0.0);
    for (std::size_t i = ev.start_index + 1;
         i < (ev.complete ? ev.end_index : ev.end_index + 1); ++i)
      CHECK(d[i] < 0.0);
    CHECK(ev.depth_points ==
          *std::min_element(d.begin() + static_cast<std::ptrdiff_t>(ev.start_index),
                            d.begin() + static_cast<std::ptrdiff_t>(ev.end_index) + 1));
  }
}

TEST_CASE("segment_drawdowns: equals the naive reference on seeded series") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const PriceSeries s = oracle::random_series(seed, 50 + seed % 151);
    for (const WindowSpec w : {WindowSpec{WindowMode::calendar_months, 6, Warmup::expanding},
                               WindowSpec{WindowMode::trading_days, 30, Warmup::expanding}}) {
      const auto ceiling = trailing_max(s, w);
      const auto d = drawdown_curve(s, ceiling);
      const auto got = segment_drawdowns(d, s, ceiling);
      const auto want = oracle::segment_naive(d, s, ceiling);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].start_index == want[i].start_index);
        CHECK(got[i].trough_index == want[i].trough_index);
        CHECK(got[i].end_index == want[i].end_index);
        CHECK(got[i].complete == want[i].complete);
        CHECK(got[i].depth_points == want[i].depth_points);
      }
    }
  }
}

TEST_CASE("collect_depths: hand trace, empty input, sorting") {
  const PriceSeries s = daily({100, 90, 95, 101, 99, 101});
  const std::vector<double> ceiling{100, 100, 100, 101, 101, 101};
  const auto events =
      segment_drawdowns(std::vector<double>{0, -10, -5, 0, -2, 0}, s, ceiling);
  const DrawdownSet set = collect_depths(events, DepthUnit::relative, false);
  REQUIRE(set.n_total == 2);
  CHECK(set.magnitudes[0] == doctest::Approx(0.1000).epsilon(1e-12));
  CHECK(set.magnitudes[1] == doctest::Approx(0.019802).epsilon(1e-4));
  CHECK(set.x_max == set.magnitudes[0]);

  CHECK(collect_depths({}, DepthUnit::relative, false).n_total == 0);
}

TEST_CASE("collect_depths: sorting preserves the multiset of magnitudes") {
  Rng rng(21);
  std::vector<DrawdownEvent> events(1000);
  for (auto& ev : events) {
    ev.depth_rel = -rng.uniform01();
    ev.depth_points = ev.depth_rel * 100.0;
    ev.complete = true;
  }
  const DrawdownSet set = collect_depths(events, DepthUnit::relative, false);
  std::vector<double> expect;
  for (const auto& ev : events) expect.push_back(-ev.depth_rel);
  std::sort(expect.begin(), expect.end(), std::greater<double>());
  CHECK(set.magnitudes == expect);
  CHECK(std::is_sorted(set.magnitudes.begin(), set.magnitudes.end(),
                       std::greater<double>()));
}

TEST_CASE("collect_depths: incomplete events respect the flag") {
  std::vector<DrawdownEvent> events(3);
  events[0].depth_rel = -0.1;
  events[1].depth_rel = -0.2;
  events[2].depth_rel = -0.3;
  events[2].complete = false;
  CHECK(collect_depths(events, DepthUnit::relative, false).n_total == 2);
  CHECK(collect_depths(events, DepthUnit::relative, true).n_total == 3);
}

TEST_CASE("rank_size_points: ranks pair with descending magnitudes") {
  DrawdownSet set;
  set.magnitudes = {0.5, 0.2, 0.1};
  set.n_total = 3;
  set.x_max = 0.5;
  const auto pts = rank_size_points(set);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0] == std::pair<std::size_t, double>{1, 0.5});
  CHECK(pts[2] == std::pair<std::size_t, double>{3, 0.1});

  set.magnitudes = {0.5, 0.5, 0.1};
  const auto tied = rank_size_points(set);
  CHECK(tied[0].first == 1);
  CHECK(tied[1].first == 2);
  CHECK(tied[1].second == 0.5);

  CHECK_THROWS_AS(rank_size_points(DrawdownSet{}), DomainError);
}

TEST_CASE("scale invariance: scaling prices leaves relative depths unchanged") {
  const PriceSeries s = oracle::random_series(31, 1500);
  PriceSeries scaled = s;
  for (double& c : scaled.closes) c *= 1234.5;
  const auto depths = [](const PriceSeries& p) {
    const auto ceiling = trailing_max(p, {});
    const auto d = drawdown_curve(p, ceiling);
    return collect_depths(segment_drawdowns(d, p, ceiling), DepthUnit::relative, true);
  };
  const auto a = depths(s);
  const auto b = depths(scaled);
  REQUIRE(a.n_total == b.n_total);
  for (std::size_t i = 0; i < a.n_total; ++i)
    CHECK(a.magnitudes[i] == doctest::Approx(b.magnitudes[i]).epsilon(1e-12));
}

TEST_CASE("conservation: event count matches the number of negative runs") {
  const PriceSeries s = oracle::random_series(57, 2000);
  const auto ceiling = trailing_max(s, {});
  const auto d = drawdown_curve(s, ceiling);
  std::size_t runs = 0;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] < 0.0 && (i == 0 || d[i - 1] >= 0.0)) ++runs;
  const auto events = segment_drawdowns(d, s, ceiling);
  const auto all = collect_depths(events, DepthUnit::relative, true);
  const auto complete_only = collect_depths(events, DepthUnit::relative, false);
  CHECK(all.n_total == runs);
  CHECK(all.n_total - complete_only.n_total <= 1);
}

TEST_CASE("warmup_length: trading-day and calendar modes") {
  const PriceSeries s = oracle::random_series(3, 400);
  CHECK(warmup_length(s, {WindowMode::trading_days, 126, Warmup::skip}) == 125);
  const std::size_t w =
      warmup_length(s, {WindowMode::calendar_months, 6, Warmup::skip});
  CHECK(w > 0);
  CHECK(!(shift_months(s.dates[w], -6) < s.dates.front()));
  CHECK(shift_months(s.dates[w - 1], -6) < s.dates.front());
}
