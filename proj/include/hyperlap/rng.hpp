#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace hyperlap {

/// Deterministic random source. mt19937_64 has a standardized sequence, and
/// the draws below avoid std::uniform_*_distribution (whose output is
/// implementation-defined), so identical seeds give identical streams on
/// every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform in {0, ..., n-1}; n must be positive.
  int next_int(int n) {
    const int r = static_cast<int>(next_double() * static_cast<double>(n));
    return r < n ? r : n - 1;
  }

  /// Standard normal via Box-Muller (two draws per call).
  double next_gaussian() {
    double u1 = next_double();
    const double u2 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  /// In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      std::swap(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(next_int(i + 1))]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

/// Splitmix64 step keyed by stream index; used to derive independent seeds
/// for k-means restarts and fold shuffles from one experiment seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace hyperlap
