#pragma once

#include <array>
#include <cstdint>

#include "fracwave/torus_field.hpp"

namespace fracwave {

/// Philox4x32-10 (Salmon, Moraes, Dror, Shaw 2011), the counter-based
/// generator behind every random quantity in the library.
///
/// A draw is addressed by (seed, counter); the seed is split into the two key
/// words (low word first). Random fields use the counter
///   { k + 2^31, member, tag, 0 }
/// and turn the 128-bit block into two doubles,
///   r = (bits[0..63] >> 11) * 2^-53, theta = 2 pi (bits[64..127] >> 11) * 2^-53,
/// where bits[0..63] = word0 | word1 << 32. Coefficients therefore depend only
/// on (seed, member, tag, k), never on K.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter block(Counter counter, Key key) noexcept;
  static Key key_from_seed(std::uint64_t seed) noexcept {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  }
};

/// Two uniform doubles in [0, 1) addressed by (seed, a, b, c).
std::array<double, 2> uniform_pair(std::uint64_t seed, std::uint32_t a, std::uint32_t b, std::uint32_t c) noexcept;

/// Parameters of the random initial-data family
///   u_k = amplitude * r_k e^{i theta_k} (1 + k^2)^{-sigma/2},  kmin <= |k| <= kmax.
struct RandomFieldSpec {
  double sigma = 3.0;
  double amplitude = 1.0;
  int kmin = 0;
  int kmax = -1;  ///< -1 means K
  bool nonnegative_only = false;  ///< zero modes k < 0 (data in the range of Pi_+)
  bool real_valued = false;       ///< enforce u_{-k} = conj(u_k)
};

TorusField random_field(int K, const RandomFieldSpec& spec, std::uint64_t seed, std::uint32_t member = 0,
                        std::uint32_t tag = 0);

/// Shorthand for the default smooth family.
inline TorusField random_field(int K, double sigma, double amplitude, std::uint64_t seed, std::uint32_t member = 0) {
  RandomFieldSpec s;
  s.sigma = sigma;
  s.amplitude = amplitude;
  return random_field(K, s, seed, member);
}

}  // namespace fracwave
