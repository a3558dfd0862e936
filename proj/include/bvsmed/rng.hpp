#pragma once

#include <cstdint>
#include <random>

#include "bvsmed/mathutil.hpp"

namespace bvsmed {

/// Deterministic RNG. All variate transforms are implemented here rather than
/// through std::<distribution>, whose output sequences are implementation-defined;
/// identical seeds must reproduce identical chains on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on (0,1), 53-bit mantissa, never returns 0 or 1.
  double uniform() {
    const std::uint64_t u = gen_() >> 11;  // 53 bits
    return (static_cast<double>(u) + 0.5) * (1.0 / 9007199254740992.0);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via inverse CDF (monotone in the underlying uniform).
  double normal() { return math::norm_quantile(uniform()); }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, n).
  std::size_t uniform_index(std::size_t n) {
    // modulo bias is < 2^-53 for any n we ever use
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

  /// Gamma(shape, rate), Marsaglia–Tsang squeeze; shape < 1 via the power boost.
  double gamma(double shape, double rate) {
    if (shape < 1.0) {
      const double u = uniform();
      return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v / rate;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v / rate;
    }
  }

  /// Inverse-Gamma(shape, scale): x with 1/x ~ Gamma(shape, rate = scale).
  double inv_gamma(double shape, double scale) { return 1.0 / gamma(shape, scale); }

  /// Fisher–Yates shuffle of an index set.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_index(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

/// splitmix64 — used to derive independent stream seeds from (base, index).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace bvsmed
