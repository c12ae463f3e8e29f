#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "fracwave/torus_field.hpp"

namespace fracwave {

/// Smallest integer >= min_size whose only prime factors are 2, 3 and 5.
int transform_size(int min_size);

/// Values u(x_j) at x_j = 2 pi j / grid_size. Any grid_size >= 1 gives exact
/// point values (modes are folded modulo grid_size).
std::vector<Complex> to_grid(const TorusField& u, int grid_size);

/// Coefficients |k| <= max_mode of the trigonometric interpolant of grid
/// samples. Requires values.size() >= 2 * max_mode + 1.
TorusField from_grid(std::span<const Complex> values, int max_mode);

/// Coefficientwise Fourier multiplier u_k -> symbol(k) u_k.
template <class Symbol>
TorusField apply_multiplier(const TorusField& u, Symbol&& symbol) {
  const int K = u.max_mode();
  std::vector<Complex> out(u.size());
  for (int k = -K; k <= K; ++k) out[static_cast<std::size_t>(k + K)] = symbol(k) * u.coeff(k);
  return TorusField(K, std::move(out));
}

/// |D|^rho u, the multiplier |k|^rho (with |0|^0 = 1). rho must be >= 0.
TorusField fractional_derivative(const TorusField& u, double rho);

/// (sum_k (1+k^2)^s |u_k|^2)^{1/2}.
double sobolev_norm(const TorusField& u, double s);

/// ||u||_{L^2} = sobolev_norm(u, 0).
inline double l2_norm(const TorusField& u) { return sobolev_norm(u, 0.0); }

/// ||{|D|^s u}||_{L^2}, the homogeneous seminorm.
double homogeneous_norm(const TorusField& u, double s);

/// (u, v) = sum_k u_k conj(v_k).
Complex inner(const TorusField& u, const TorusField& v);

/// Equispaced quadrature of (mean |u|^p)^{1/p} on grid_size points; p may be
/// +infinity, which returns the grid maximum of |u|. grid_size >= 2K+2.
double lp_norm(const TorusField& u, double p, int grid_size);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Exact coefficients of the pointwise product a*b, bandwidth Ka + Kb.
TorusField product(const TorusField& a, const TorusField& b);

/// |u|^2 u projected to |k| <= K, alias-free (grid >= 4K+1).
TorusField cubic_term(const TorusField& u);

/// |u|^2 u on its full bandwidth 3K.
TorusField cubic_term_full(const TorusField& u);

/// Pi_+ : zero all modes k < 0.
TorusField szego_project(const TorusField& u);

/// |u|^2 on its full bandwidth 2K.
TorusField pointwise_modulus_squared(const TorusField& u);

/// max_k |u_{-k} - conj(u_k)|; zero iff u is real valued.
double imaginary_defect(const TorusField& u);

}  // namespace fracwave
