#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace roguewave {

// Seeded random stream addressed by (master seed, stream id, index).
//
// Every realization of an ensemble owns one RandomStream derived from its
// coordinates, so results do not depend on which worker ran it or in which
// order. std::seed_seq and std::mt19937_64 are fully specified by the
// standard, so a given triple yields the same bits on every platform.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t index);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }

  result_type operator()() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi].
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace roguewave
