#pragma once

#include <cstdint>
#include <random>

namespace fatbots {

// mt19937_64 is fully specified by the standard; the distributions are not,
// so the conversions below are done by hand to keep replays portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  // uniform in [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // uniform in [0, n), n > 0; rejection keeps it unbiased
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do v = eng_(); while (v >= limit);
    return v % n;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace fatbots
