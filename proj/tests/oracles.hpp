#pragma once

// Independent reference computations used only by the tests. None of these
// touch the FFT path of the library: sums are direct, quadrature is dense.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "fracwave/torus_field.hpp"

namespace oracle {

using fracwave::Complex;
using fracwave::TorusField;

inline Complex at(const TorusField& u, long k) {
  return std::abs(k) <= u.max_mode() ? u.coeff(static_cast<int>(k)) : Complex{};
}

/// Random field from std::mt19937_64, unrelated to the library generator.
inline TorusField random_field(int K, double sigma, unsigned seed, double amplitude = 1.0) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Complex> c(static_cast<std::size_t>(2 * K + 1));
  for (int k = -K; k <= K; ++k) {
    c[static_cast<std::size_t>(k + K)] = amplitude * Complex(n(g), n(g)) * std::pow(1.0 + double(k) * k, -0.5 * sigma);
  }
  return TorusField(K, std::move(c));
}

/// Direct point evaluation u(x) = sum_k u_k e^{ikx}.
inline Complex eval(const TorusField& u, double x) {
  Complex acc{};
  for (int k = -u.max_mode(); k <= u.max_mode(); ++k) acc += u.coeff(k) * std::polar(1.0, k * x);
  return acc;
}

/// Coefficients of |u|^2 u by the triple convolution
/// sum_{l,m} u_l conj(u_m) u_{k-l+m}, for |k| <= out_mode.
inline TorusField cubic_direct(const TorusField& u, int out_mode) {
  const int K = u.max_mode();
  std::vector<Complex> c(static_cast<std::size_t>(2 * out_mode + 1));
  for (int k = -out_mode; k <= out_mode; ++k) {
    Complex acc{};
    for (int l = -K; l <= K; ++l) {
      for (int m = -K; m <= K; ++m) acc += u.coeff(l) * std::conj(u.coeff(m)) * at(u, long(k) - l + m);
    }
    c[static_cast<std::size_t>(k + out_mode)] = acc;
  }
  return TorusField(out_mode, std::move(c));
}

/// Coefficients of a * b by the double sum, bandwidth Ka + Kb.
inline TorusField product_direct(const TorusField& a, const TorusField& b) {
  const int L = a.max_mode() + b.max_mode();
  std::vector<Complex> c(static_cast<std::size_t>(2 * L + 1));
  for (int k = -L; k <= L; ++k) {
    Complex acc{};
    for (int l = -a.max_mode(); l <= a.max_mode(); ++l) acc += a.coeff(l) * at(b, long(k) - l);
    c[static_cast<std::size_t>(k + L)] = acc;
  }
  return TorusField(L, std::move(c));
}

/// Coefficients of |u|^2 by the double sum sum_l u_l conj(u_{l-k}).
inline TorusField modulus_squared_direct(const TorusField& u) {
  const int K = u.max_mode();
  std::vector<Complex> c(static_cast<std::size_t>(4 * K + 1));
  for (int k = -2 * K; k <= 2 * K; ++k) {
    Complex acc{};
    for (int l = -K; l <= K; ++l) acc += u.coeff(l) * std::conj(at(u, long(l) - k));
    c[static_cast<std::size_t>(k + 2 * K)] = acc;
  }
  return TorusField(2 * K, std::move(c));
}

/// Leibniz defect coefficients sum_l (|l|^a + |k-l|^a - |k|^a) u_l conj(u_{l-k}).
inline TorusField leibniz_direct(const TorusField& u, double alpha) {
  const int K = u.max_mode();
  std::vector<Complex> c(static_cast<std::size_t>(4 * K + 1));
  for (int k = -2 * K; k <= 2 * K; ++k) {
    Complex acc{};
    for (int l = -K; l <= K; ++l) {
      const double w = std::pow(std::abs(double(l)), alpha) + std::pow(std::abs(double(k - l)), alpha) -
                       std::pow(std::abs(double(k)), alpha);
      acc += w * u.coeff(l) * std::conj(at(u, long(l) - k));
    }
    c[static_cast<std::size_t>(k + 2 * K)] = acc;
  }
  return TorusField(2 * K, std::move(c));
}

/// (mean over M equispaced points of |u|^p)^{1/p} by direct evaluation.
inline double lp_dense(const TorusField& u, double p, long M) {
  double acc = 0.0;
  for (long j = 0; j < M; ++j) acc += std::pow(std::abs(eval(u, 2.0 * std::numbers::pi * j / M)), p);
  return std::pow(acc / M, 1.0 / p);
}

/// Dense matrix form of the Hankel operator: (H_v h)_k = sum_{l>=k} v_l conj(h_{l-k}).
inline std::vector<Complex> hankel_matrix_apply(const TorusField& v, const TorusField& h) {
  const int K = v.max_mode();
  std::vector<Complex> out(static_cast<std::size_t>(K + 1));
  for (int k = 0; k <= K; ++k) {
    for (int l = k; l <= K; ++l) out[static_cast<std::size_t>(k)] += v.coeff(l) * std::conj(at(h, l - k));
  }
  return out;
}

/// One classical RK4 step of i u_t = |u|^2 u evaluated pointwise on M grid
/// points and projected back by a direct DFT.
inline TorusField rk4_phase_step(const TorusField& u, double tau, long M) {
  const int K = u.max_mode();
  std::vector<Complex> vals(static_cast<std::size_t>(M));
  for (long j = 0; j < M; ++j) {
    Complex z = eval(u, 2.0 * std::numbers::pi * j / M);
    auto f = [](Complex w) { return Complex(0, -1) * std::norm(w) * w; };
    const Complex k1 = f(z), k2 = f(z + 0.5 * tau * k1), k3 = f(z + 0.5 * tau * k2), k4 = f(z + tau * k3);
    vals[static_cast<std::size_t>(j)] = z + tau / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  std::vector<Complex> c(static_cast<std::size_t>(2 * K + 1));
  for (int k = -K; k <= K; ++k) {
    Complex acc{};
    for (long j = 0; j < M; ++j) acc += vals[static_cast<std::size_t>(j)] * std::polar(1.0, -2.0 * std::numbers::pi * k * j / M);
    c[static_cast<std::size_t>(k + K)] = acc / double(M);
  }
  return TorusField(K, std::move(c));
}

inline double max_diff(const TorusField& a, const TorusField& b) { return a.max_abs_diff(b); }

inline double max_abs(const TorusField& a) {
  double m = 0.0;
  for (const auto& c : a.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

}  // namespace oracle
