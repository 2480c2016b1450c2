#include "ddcrit/synth.hpp"

#include <cmath>

#include "ddcrit/error.hpp"
#include "ddcrit/rng.hpp"

namespace ddc {

namespace {

constexpr Date kSynthEpoch{std::chrono::year{2000}, std::chrono::month{1},
                           std::chrono::day{3}};  // a Monday

std::vector<Date> weekday_dates(std::size_t n) {
  using namespace std::chrono;
  std::vector<Date> dates;
  dates.reserve(n);
  sys_days day = to_days(kSynthEpoch);
  while (dates.size() < n) {
    const weekday wd{day};
    if (wd != Saturday && wd != Sunday) dates.emplace_back(year_month_day{day});
    day += days{1};
  }
  return dates;
}

}  // namespace

PriceSeries gen_gbm(const GbmSpec& spec, std::string symbol) {
  if (spec.n_days < 2) throw DomainError("gen_gbm: n_days must be >= 2");
  if (!(spec.sigma > 0.0)) throw DomainError("gen_gbm: sigma must be positive");
  if (!(spec.start_price > 0.0)) throw DomainError("gen_gbm: start_price must be positive");
  PriceSeries series;
  series.symbol = std::move(symbol);
  series.dates = weekday_dates(spec.n_days);
  series.closes.reserve(spec.n_days);
  series.closes.push_back(spec.start_price);
  Rng rng = Rng::substream(spec.seed, Rng::hash_string("gbm"));
  for (std::size_t i = 1; i < spec.n_days; ++i) {
    const double r = rng.normal(spec.mu, spec.sigma);
    series.closes.push_back(series.closes.back() * std::exp(r));
  }
  series.validate();
  return series;
}

PriceSeries shuffle_returns(const PriceSeries& series, std::uint64_t seed) {
  series.validate();
  std::vector<double> returns = log_returns(series).values;
  Rng rng = Rng::substream(seed, Rng::hash_string("shuffle"));
  for (std::size_t i = returns.size(); i > 1; --i)
    std::swap(returns[i - 1], returns[rng.below(i)]);
  PriceSeries out;
  out.symbol = series.symbol;
  out.dates = series.dates;
  out.closes.reserve(series.size());
  out.closes.push_back(series.closes.front());
  for (double r : returns) out.closes.push_back(out.closes.back() * std::exp(r));
  return out;
}

RegimeVerdict classify_regime(const CriticalSplit& split, const PowerLawFit& fit,
                              const RegimeThresholds& thresholds) {
  RegimeVerdict verdict;
  verdict.k_sup = split.k_sup;
  verdict.ks_distance = fit.ks_distance;
  verdict.p_value = fit.p_value;
  verdict.n_sup = split.n_sup;
  verdict.thresholds = thresholds;
  const bool leptokurtic =
      std::isfinite(split.k_sup) && split.k_sup >= thresholds.k_sup_min;
  const bool enough_tail = split.n_sup >= thresholds.n_min;
  const bool fit_ok = !fit.p_value.has_value() || *fit.p_value >= thresholds.p_min;
  verdict.label = (leptokurtic && enough_tail && fit_ok) ? RegimeLabel::SelfOrganized
                                                         : RegimeLabel::RandomWalkOnly;
  return verdict;
}

}  // namespace ddc
