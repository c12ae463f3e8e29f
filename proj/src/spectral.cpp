#include "fracwave/spectral.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "fft.hpp"

namespace fracwave {
namespace {

std::size_t wrap(long k, long m) { return static_cast<std::size_t>(((k % m) + m) % m); }

}  // namespace

int transform_size(int min_size) {
  if (min_size <= 1) return 1;
  for (int n = min_size;; ++n) {
    int r = n;
    for (int p : {2, 3, 5}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return n;
  }
}

std::vector<Complex> to_grid(const TorusField& u, int grid_size) {
  if (grid_size < 1) throw std::invalid_argument("to_grid: grid_size must be positive");
  std::vector<Complex> values(static_cast<std::size_t>(grid_size));
  const int K = u.max_mode();
  for (int k = -K; k <= K; ++k) values[wrap(k, grid_size)] += u.coeff(k);
  detail::dft(values, +1);
  return values;
}

TorusField from_grid(std::span<const Complex> values, int max_mode) {
  const long M = static_cast<long>(values.size());
  if (M < 2L * max_mode + 1) {
    throw std::invalid_argument("from_grid: " + std::to_string(M) + " samples cannot resolve max_mode " +
                                std::to_string(max_mode));
  }
  std::vector<Complex> work(values.begin(), values.end());
  detail::dft(work, -1);
  std::vector<Complex> out(static_cast<std::size_t>(2 * max_mode + 1));
  const double inv = 1.0 / static_cast<double>(M);
  for (int k = -max_mode; k <= max_mode; ++k) out[static_cast<std::size_t>(k + max_mode)] = work[wrap(k, M)] * inv;
  return TorusField(max_mode, std::move(out));
}

TorusField fractional_derivative(const TorusField& u, double rho) {
  if (!(rho >= 0.0)) throw std::invalid_argument("fractional_derivative: order must be >= 0");
  return apply_multiplier(u, [rho](int k) { return std::pow(std::abs(static_cast<double>(k)), rho); });
}

double sobolev_norm(const TorusField& u, double s) {
  const int K = u.max_mode();
  double acc = 0.0;
  for (int k = -K; k <= K; ++k) {
    const double w = (s == 0.0) ? 1.0 : std::pow(1.0 + static_cast<double>(k) * k, s);
    acc += w * std::norm(u.coeff(k));
  }
  return std::sqrt(acc);
}

double homogeneous_norm(const TorusField& u, double s) {
  const int K = u.max_mode();
  double acc = 0.0;
  for (int k = -K; k <= K; ++k) acc += std::pow(std::abs(static_cast<double>(k)), 2.0 * s) * std::norm(u.coeff(k));
  return std::sqrt(acc);
}

Complex inner(const TorusField& u, const TorusField& v) {
  const int K = std::min(u.max_mode(), v.max_mode());
  Complex acc{};
  for (int k = -K; k <= K; ++k) acc += u.coeff(k) * std::conj(v.coeff(k));
  return acc;
}

double lp_norm(const TorusField& u, double p, int grid_size) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (grid_size < 2 * u.max_mode() + 2) {
    throw std::invalid_argument("lp_norm: grid_size " + std::to_string(grid_size) + " below 2K+2 = " +
                                std::to_string(2 * u.max_mode() + 2));
  }
  const auto values = to_grid(u, grid_size);
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0.0;
  for (const auto& v : values) acc += std::pow(std::abs(v), p);
  return std::pow(acc / static_cast<double>(values.size()), 1.0 / p);
}

TorusField product(const TorusField& a, const TorusField& b) {
  const int L = a.max_mode() + b.max_mode();
  const int M = transform_size(2 * L + 1);
  auto fa = to_grid(a, M);
  const auto fb = to_grid(b, M);
  for (std::size_t j = 0; j < fa.size(); ++j) fa[j] *= fb[j];
  return from_grid(fa, L);
}

namespace {

TorusField cubic_on_grid(const TorusField& u, int out_mode, int grid_size) {
  auto values = to_grid(u, grid_size);
  for (auto& v : values) v *= std::norm(v);
  return from_grid(values, out_mode);
}

}  // namespace

TorusField cubic_term(const TorusField& u) {
  const int K = u.max_mode();
  return cubic_on_grid(u, K, transform_size(4 * K + 1));
}

TorusField cubic_term_full(const TorusField& u) {
  const int K = u.max_mode();
  return cubic_on_grid(u, 3 * K, transform_size(6 * K + 1));
}

TorusField szego_project(const TorusField& u) {
  return apply_multiplier(u, [](int k) { return k >= 0 ? 1.0 : 0.0; });
}

TorusField pointwise_modulus_squared(const TorusField& u) {
  const int K = u.max_mode();
  auto values = to_grid(u, transform_size(4 * K + 1));
  for (auto& v : values) v = std::norm(v);
  auto out = from_grid(values, 2 * K);
  // |u|^2 is real: enforce exact conjugate symmetry of its coefficients.
  std::vector<Complex> sym(out.coeffs().begin(), out.coeffs().end());
  const int L = 2 * K;
  for (int k = 0; k <= L; ++k) {
    const Complex avg = 0.5 * (out.coeff(k) + std::conj(out.coeff(-k)));
    sym[static_cast<std::size_t>(k + L)] = avg;
    sym[static_cast<std::size_t>(-k + L)] = std::conj(avg);
  }
  return TorusField(L, std::move(sym));
}

double imaginary_defect(const TorusField& u) {
  const int K = u.max_mode();
  double d = 0.0;
  for (int k = 0; k <= K; ++k) d = std::max(d, std::abs(u.coeff(-k) - std::conj(u.coeff(k))));
  return d;
}

}  // namespace fracwave
