#include "ddcrit/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ddcrit/error.hpp"

namespace ddc {

namespace {

double kurtosis_or_nan(std::span<const double> xs) {
  try {
    return excess_kurtosis(xs);
  } catch (const DomainError&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::vector<SweepPoint> kurtosis_sweep(const DrawdownSet& set, std::size_t min_segment) {
  if (set.magnitudes.empty()) throw DomainError("kurtosis_sweep: empty drawdown set");
  if (min_segment < 4) throw DomainError("kurtosis_sweep: min_segment must be >= 4");

  std::vector<double> asc(set.magnitudes.rbegin(), set.magnitudes.rend());
  std::vector<SweepPoint> sweep;
  std::size_t i = 0;
  while (i < asc.size()) {
    // candidate cutoff = asc[i]; inferior set = asc[0..i)
    if (i >= min_segment) {
      const std::span<const double> inferior(asc.data(), i);
      const double k = kurtosis_or_nan(inferior);
      if (std::isfinite(k)) sweep.push_back({asc[i], i, k});
    }
    // skip ties so each distinct magnitude yields one candidate
    const double v = asc[i];
    while (i < asc.size() && asc[i] == v) ++i;
  }
  if (sweep.empty())
    throw DomainError("kurtosis_sweep: no evaluable cutoff (set too small or degenerate)");
  return sweep;
}

CriticalSplit select_critical(const std::vector<SweepPoint>& sweep,
                              const DrawdownSet& set, std::size_t min_tail) {
  if (sweep.empty()) throw DomainError("select_critical: empty sweep");
  const std::size_t n_total = set.n_total;

  const SweepPoint* best = nullptr;
  for (const SweepPoint& p : sweep) {
    const std::size_t n_sup = n_total - p.n_inferior;
    if (n_sup < min_tail) continue;
    if (best == nullptr) {
      best = &p;
      continue;
    }
    const double a = std::fabs(p.k_inferior);
    const double b = std::fabs(best->k_inferior);
    if (a < b ||
        (a == b && (p.n_inferior > best->n_inferior ||
                    (p.n_inferior == best->n_inferior &&
                     p.cutoff_value < best->cutoff_value))))
      best = &p;
  }
  if (best == nullptr)
    throw DomainError("select_critical: no cutoff leaves a tail of at least " +
                      std::to_string(min_tail) + " events");

  CriticalSplit split;
  split.x_min = best->cutoff_value;
  split.n_total = n_total;
  split.n_inf = best->n_inferior;
  split.n_sup = n_total - best->n_inferior;
  split.k_inf = best->k_inferior;
  split.x_max = set.x_max;
  split.pct_sup = static_cast<double>(split.n_sup) / static_cast<double>(n_total);
  split.k_tot = kurtosis_or_nan(set.magnitudes);
  // superior segment: magnitudes >= x_min, i.e. the first n_sup of the
  // descending-sorted set
  const std::span<const double> sup(set.magnitudes.data(), split.n_sup);
  split.k_sup = kurtosis_or_nan(sup);
  return split;
}

std::array<double, 9> split_report(const CriticalSplit& split) {
  return {static_cast<double>(split.n_total),
          static_cast<double>(split.n_sup),
          static_cast<double>(split.n_inf),
          split.pct_sup,
          split.k_tot,
          split.k_sup,
          split.k_inf,
          split.x_max,
          split.x_min};
}

}  // namespace ddc
