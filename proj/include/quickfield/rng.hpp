#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace quickfield {

/// Seedable generator with hand-rolled distributions. std::mt19937_64 has a
/// portable bit stream, but the std distributions do not, so uniform/normal
/// draws are implemented here to keep runs reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    // rejection sampling, no modulo bias
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % bound;
    }
  }

  /// Normal draw via Box-Muller (cosine branch only).
  double normal(double mean, double stddev) {
    // u1 in (0, 1] so the log is finite
    const double u1 =
        (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform01();
    const double z =
        std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    return mean + stddev * z;
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

}  // namespace quickfield
