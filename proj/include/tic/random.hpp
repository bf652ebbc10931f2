// Seeded random streams with platform-independent output.
//
// The integer stream is std::mt19937_64, whose output sequence is fixed by
// the C++ standard. The standard distributions are implementation-defined,
// so uniforms and normals are derived here explicitly:
//   uniform  (top 53 bits + 0.5) * 2^-53, strictly inside (0, 1)
//   normal   Box-Muller, both outputs of a pair used in order
//   index    modulo with rejection of the biased tail

#ifndef TIC_RANDOM_HPP_
#define TIC_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>

namespace tic {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t index(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  double normal() {
    if (spare_) {
      double v = *spare_;
      spare_.reset();
      return v;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace tic

#endif  // TIC_RANDOM_HPP_
