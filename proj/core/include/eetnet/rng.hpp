#ifndef EETNET_RNG_HPP
#define EETNET_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace eetnet {

// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used to derive independent
// per-sample streams from (master seed, sample index) so that disorder
// realizations are reproducible regardless of evaluation order.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the counter-indexed stream `index` under a master seed.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x9e3779b97f4a7c15ULL));
}

/// Standard-normal stream backed by mt19937_64 with an explicit Box-Muller
/// transform. mt19937_64 output is fully specified by the standard, unlike
/// std::normal_distribution, so streams are bit-stable across toolchains.
class GaussianStream {
public:
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open01();   // (0,1], safe for log
    const double u2 = uniform_half01();   // [0,1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  double uniform_open01() { return static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53; }
  double uniform_half01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace eetnet

#endif
