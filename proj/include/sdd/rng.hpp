#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "sdd/types.hpp"

namespace sdd {

/// Seedable generator used by every randomized routine. Normal draws go
/// through an explicit Box-Muller transform so that a given seed replays the
/// same stream regardless of the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  double uniform() {
    // 53-bit mantissa in [0,1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t uniform_index(std::size_t n) {
    // rejection sampling keeps the draw unbiased
    const std::uint64_t bound = n;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return static_cast<std::size_t>(x % bound);
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  Vec normal_vector(Eigen::Index d) {
    Vec v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = normal();
    return v;
  }

  /// Uniform draw from the unit ball in R^d.
  Vec ball(Eigen::Index d) {
    Vec v = normal_vector(d);
    const double norm = v.norm();
    if (norm == 0.0) return Vec::Zero(d);
    const double radius = std::pow(uniform(), 1.0 / static_cast<double>(d));
    return v * (radius / norm);
  }

  Vec sphere(Eigen::Index d) {
    Vec v = normal_vector(d);
    const double norm = v.norm();
    if (norm == 0.0) {
      Vec e = Vec::Zero(d);
      e[0] = 1.0;
      return e;
    }
    return v / norm;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace sdd
