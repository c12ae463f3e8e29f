#include "fracwave/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracwave {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

double to_unit(std::uint32_t lo, std::uint32_t hi) noexcept {
  const std::uint64_t bits = static_cast<std::uint64_t>(lo) | (static_cast<std::uint64_t>(hi) << 32);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

Philox4x32::Counter Philox4x32::block(Counter x, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, x[0], hi0, lo0);
    mulhilo(kM1, x[2], hi1, lo1);
    x = {hi1 ^ x[1] ^ key[0], lo1, hi0 ^ x[3] ^ key[1], lo0};
    key[0] += kW0;
    key[1] += kW1;
  }
  return x;
}

std::array<double, 2> uniform_pair(std::uint64_t seed, std::uint32_t a, std::uint32_t b, std::uint32_t c) noexcept {
  const auto out = Philox4x32::block({a, b, c, 0u}, Philox4x32::key_from_seed(seed));
  return {to_unit(out[0], out[1]), to_unit(out[2], out[3])};
}

TorusField random_field(int K, const RandomFieldSpec& spec, std::uint64_t seed, std::uint32_t member,
                        std::uint32_t tag) {
  if (K < 0) throw std::invalid_argument("random_field: K must be >= 0");
  const int kmax = spec.kmax < 0 ? K : std::min(spec.kmax, K);
  if (spec.kmin < 0 || spec.kmin > kmax) throw std::invalid_argument("random_field: need 0 <= kmin <= kmax");
  TorusField u(K);
  std::vector<Complex> c(u.size());
  for (int k = -K; k <= K; ++k) {
    const int a = std::abs(k);
    if (a < spec.kmin || a > kmax) continue;
    if (spec.nonnegative_only && k < 0) continue;
    if (spec.real_valued && k < 0) continue;
    const auto [r, t] = uniform_pair(seed, static_cast<std::uint32_t>(k) + 0x80000000u, member, tag);
    const double weight = spec.amplitude * std::pow(1.0 + static_cast<double>(k) * k, -0.5 * spec.sigma);
    Complex z = std::polar(r * weight, 2.0 * std::numbers::pi * t);
    if (spec.real_valued && k == 0) z = z.real();
    c[static_cast<std::size_t>(k + K)] = z;
  }
  if (spec.real_valued) {
    for (int k = 1; k <= K; ++k) c[static_cast<std::size_t>(-k + K)] = std::conj(c[static_cast<std::size_t>(k + K)]);
  }
  return TorusField(K, std::move(c));
}

}  // namespace fracwave
