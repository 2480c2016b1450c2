#include "ddcrit/powerlaw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ddcrit/error.hpp"
#include "ddcrit/rng.hpp"
#include "ddcrit/series.hpp"

namespace ddc {

double mle_alpha(std::span<const double> tail, double x_min) {
  if (tail.empty()) throw DomainError("mle_alpha: empty tail");
  if (!(x_min > 0.0)) throw DomainError("mle_alpha: x_min must be positive");
  double log_sum = 0.0;
  for (double x : tail) {
    if (x < x_min)
      throw DomainError("mle_alpha: tail value " + std::to_string(x) +
                        " below x_min " + std::to_string(x_min));
    log_sum += std::log(x / x_min);
  }
  if (log_sum <= 0.0)
    throw DomainError("mle_alpha: all tail values equal x_min");
  return 1.0 + static_cast<double>(tail.size()) / log_sum;
}

double alpha_stderr(double alpha, std::size_t n_tail) {
  if (!(alpha > 1.0)) throw DomainError("alpha_stderr: alpha must exceed 1");
  if (n_tail < 1) throw DomainError("alpha_stderr: n_tail must be >= 1");
  return (alpha - 1.0) / std::sqrt(static_cast<double>(n_tail));
}

PowerRegression rank_size_regression(
    std::span<const std::pair<std::size_t, double>> points) {
  if (points.size() < 3)
    throw DomainError("rank_size_regression: need at least 3 points");
  std::vector<double> lx, ly;
  lx.reserve(points.size());
  ly.reserve(points.size());
  for (const auto& [rank, mag] : points) {
    if (rank < 1 || !(mag > 0.0))
      throw DomainError("rank_size_regression: ranks and magnitudes must be positive");
    lx.push_back(std::log10(static_cast<double>(rank)));
    ly.push_back(std::log10(mag));
  }
  const double mx = mean(lx);
  const double my = mean(ly);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    syy += (ly[i] - my) * (ly[i] - my);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  // constant magnitudes leave syy at rounding noise, not exactly zero
  const auto [ly_min, ly_max] = std::minmax_element(ly.begin(), ly.end());
  PowerRegression reg;
  if (*ly_max - *ly_min <= 0.0 || sxx <= 0.0) {
    reg.slope = 0.0;
    reg.intercept = my;
    reg.r_squared = 0.0;
    reg.degenerate = true;
    return reg;
  }
  reg.slope = sxy / sxx;
  reg.intercept = my - reg.slope * mx;
  reg.r_squared = (sxy * sxy) / (sxx * syy);
  return reg;
}

double ks_distance(std::span<const double> tail, double alpha, double x_min) {
  if (tail.empty()) throw DomainError("ks_distance: empty tail");
  std::vector<double> xs(tail.begin(), tail.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double model = 1.0 - std::pow(xs[i] / x_min, 1.0 - alpha);
    const double hi = static_cast<double>(i + 1) / n;
    const double lo = static_cast<double>(i) / n;
    d = std::max(d, std::max(std::fabs(hi - model), std::fabs(lo - model)));
  }
  return d;
}

PowerLawFit fit_power_law(std::span<const double> tail, double x_min) {
  PowerLawFit fit;
  fit.alpha = mle_alpha(tail, x_min);
  fit.n_tail = tail.size();
  if (fit.n_tail < 2) throw DomainError("fit_power_law: need at least 2 tail points");
  fit.sigma = alpha_stderr(fit.alpha, fit.n_tail);
  fit.x_min = x_min;
  fit.ks_distance = ks_distance(tail, fit.alpha, x_min);
  return fit;
}

double bootstrap_pvalue(std::span<const double> tail, const PowerLawFit& fit,
                        std::size_t n_trials, std::uint64_t seed) {
  if (n_trials < 1) throw DomainError("bootstrap_pvalue: n_trials must be >= 1");
  if (tail.empty()) throw DomainError("bootstrap_pvalue: empty tail");
  std::size_t exceed = 0;
  std::vector<double> synth(tail.size());
  for (std::size_t t = 0; t < n_trials; ++t) {
    Rng rng = Rng::substream(seed, t);
    for (double& x : synth) x = rng.pareto(fit.alpha, fit.x_min);
    double ks;
    try {
      const double a = mle_alpha(synth, fit.x_min);
      ks = ks_distance(synth, a, fit.x_min);
    } catch (const DomainError&) {
      ks = 1.0;  // degenerate resample counts against the model
    }
    if (ks >= fit.ks_distance) ++exceed;
  }
  return static_cast<double>(exceed) / static_cast<double>(n_trials);
}

double ks_minimizing_xmin(std::span<const double> magnitudes_desc,
                          std::size_t min_tail) {
  if (magnitudes_desc.size() < std::max<std::size_t>(min_tail, 2))
    throw DomainError("ks_minimizing_xmin: too few magnitudes");
  double best_xmin = 0.0;
  double best_ks = std::numeric_limits<double>::infinity();
  for (std::size_t n_tail = std::max<std::size_t>(min_tail, 2);
       n_tail <= magnitudes_desc.size(); ++n_tail) {
    const double cand = magnitudes_desc[n_tail - 1];
    const std::span<const double> tail = magnitudes_desc.first(n_tail);
    try {
      const double a = mle_alpha(tail, cand);
      const double ks = ks_distance(tail, a, cand);
      if (ks < best_ks) {
        best_ks = ks;
        best_xmin = cand;
      }
    } catch (const DomainError&) {
      continue;
    }
  }
  if (!(best_ks < std::numeric_limits<double>::infinity()))
    throw DomainError("ks_minimizing_xmin: no evaluable candidate");
  return best_xmin;
}

}  // namespace ddc
