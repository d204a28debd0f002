#pragma once

#include <cstdint>
#include <random>

namespace rolab::sim {

/// Independent random streams, one per concern, all derived from the run
/// seed. Adding draws to one stream never perturbs another.
enum class Stream : std::uint64_t { placement = 1, mobility = 2, traffic = 3, loss = 4 };

/// 64-bit generator with portable uniform draws (std distributions are not
/// reproducible across standard library implementations).
class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream) : engine_(mix(seed, static_cast<std::uint64_t>(stream))) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    // Rejection sampling keeps the draw unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }
  bool bernoulli(double p) { return p > 0.0 && uniform() < p; }

 private:
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + stream * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace rolab::sim
