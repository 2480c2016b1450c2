#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ddc {

// Continuous power-law tail fit: alpha = 1 + N / sum(ln(x_i/x_min)),
// sigma = (alpha - 1) / sqrt(N).
struct PowerLawFit {
  double alpha = 0.0;
  double sigma = 0.0;
  double x_min = 0.0;
  std::size_t n_tail = 0;
  double ks_distance = 0.0;
  std::optional<double> p_value;
};

struct PowerRegression {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool degenerate = false;  // zero variance in the logged magnitudes
};

double mle_alpha(std::span<const double> tail, double x_min);

double alpha_stderr(double alpha, std::size_t n_tail);

// OLS of log10(magnitude) on log10(rank); r_squared is the squared
// correlation of the logged pairs.
PowerRegression rank_size_regression(
    std::span<const std::pair<std::size_t, double>> points);

// Max |empirical CDF - fitted CDF| with F(x) = 1 - (x/x_min)^(1-alpha).
double ks_distance(std::span<const double> tail, double alpha, double x_min);

// Fit + KS in one step; p_value left unset.
PowerLawFit fit_power_law(std::span<const double> tail, double x_min);

// Monte-Carlo goodness of fit: n_trials tails of the same size drawn from
// the fitted model (x_min held fixed), refit, KS recomputed; returns the
// fraction with KS >= the observed distance. Trial t uses substream
// (seed, t), so the result does not depend on evaluation order.
double bootstrap_pvalue(std::span<const double> tail, const PowerLawFit& fit,
                        std::size_t n_trials, std::uint64_t seed);

// Cross-check selector: the x_min (among observed magnitudes, descending
// input) minimizing the KS distance of the tail fitted above it.
double ks_minimizing_xmin(std::span<const double> magnitudes_desc,
                          std::size_t min_tail);

}  // namespace ddc
