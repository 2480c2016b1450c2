#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ddcrit/drawdown.hpp"

namespace ddc {

// Excess kurtosis of all magnitudes strictly below cutoff_value.
struct SweepPoint {
  double cutoff_value = 0.0;
  std::size_t n_inferior = 0;
  double k_inferior = 0.0;
};

// The kurtosis-neutral split: the inferior segment (< x_min) is the closest
// to mesokurtic, the superior segment (>= x_min) holds the heavy tail.
struct CriticalSplit {
  double x_min = 0.0;
  std::size_t n_total = 0;
  std::size_t n_sup = 0;
  std::size_t n_inf = 0;
  double k_tot = 0.0;  // NaN when not computable
  double k_sup = 0.0;  // NaN when not computable
  double k_inf = 0.0;
  double x_max = 0.0;
  double pct_sup = 0.0;  // n_sup / n_total
};

// For each distinct magnitude (ascending) evaluate the excess kurtosis of
// everything strictly below it; points with fewer than min_segment values
// or zero variance are skipped. Throws DomainError when nothing is
// evaluable. min_segment must be >= 4.
std::vector<SweepPoint> kurtosis_sweep(const DrawdownSet& set, std::size_t min_segment);

// Picks the cutoff minimizing |k_inferior| subject to n_sup >= min_tail,
// ties broken toward the larger inferior set, then the smaller cutoff.
CriticalSplit select_critical(const std::vector<SweepPoint>& sweep,
                              const DrawdownSet& set, std::size_t min_tail);

// The first nine reported statistics in table column order:
// N_tot, N_sup, N_inf, %Sup, K_tot, K_sup, K_inf, x_Max, x_min.
std::array<double, 9> split_report(const CriticalSplit& split);

}  // namespace ddc
