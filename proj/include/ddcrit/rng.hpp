#pragma once

#include <cstdint>
#include <string_view>

namespace ddc {

// Deterministic pseudo-random stream built on splitmix64. One fixed
// algorithm everywhere so reports are byte-identical across runs and
// platforms. Substreams are derived by mixing the master seed with a
// stream index, which keeps parallel and serial trial loops in agreement.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z);

  // Independent stream `index` of a master seed.
  static Rng substream(std::uint64_t master, std::uint64_t index);

  // FNV-1a, for deriving per-symbol streams from a name.
  static std::uint64_t hash_string(std::string_view s);

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double uniform01();

  // Box-Muller; generates pairs and caches the spare deviate.
  double normal(double mu, double sigma);

  // Inverse-CDF Pareto sample, support [x_min, inf), exponent alpha > 1.
  double pareto(double alpha, double x_min);

  // Uniform integer in [0, bound) by rejection, bound >= 1.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ddc
