#pragma once

#include <complex>
#include <span>
#include <vector>

namespace fracwave {

using Complex = std::complex<double>;

/// Band-limited complex function on the torus, stored by its Fourier
/// coefficients u_k for k = -K..K.
///
/// Conventions used throughout the library:
///   u(x) = sum_k u_k e^{ikx},  x in [0, 2pi)
///   the torus carries the normalized measure dx/2pi, so
///   ||u||_{L^2}^2 = sum_k |u_k|^2 and (u, v) = sum_k u_k conj(v_k).
class TorusField {
 public:
  explicit TorusField(int max_mode);
  TorusField(int max_mode, std::vector<Complex> coeffs);

  static TorusField zero(int max_mode) { return TorusField(max_mode); }
  static TorusField mode(int max_mode, int k, Complex amplitude = 1.0);
  static TorusField constant(int max_mode, Complex value);

  int max_mode() const noexcept { return max_mode_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  /// Coefficient of e^{ikx}; zero outside |k| <= K.
  Complex coeff(int k) const noexcept {
    return (k < -max_mode_ || k > max_mode_) ? Complex{} : coeffs_[static_cast<std::size_t>(k + max_mode_)];
  }
  Complex operator[](int k) const noexcept { return coeff(k); }

  /// Index 0 holds k = -K.
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }

  /// Same function embedded with a different cutoff (truncating or zero padding).
  TorusField resized(int new_max_mode) const;

  /// Coefficients of the pointwise conjugate: (conj u)_k = conj(u_{-k}).
  TorusField conj() const;

  /// Coefficientwise conjugate, i.e. the function x -> conj(u(-x)).
  TorusField conj_coeffs() const;

  /// Maximum coefficientwise distance; fields of different K are compared
  /// after zero padding.
  double max_abs_diff(const TorusField& other) const;

  TorusField& operator+=(const TorusField& rhs);
  TorusField& operator-=(const TorusField& rhs);
  TorusField& operator*=(Complex scale);

  friend TorusField operator+(TorusField a, const TorusField& b) { return a += b; }
  friend TorusField operator-(TorusField a, const TorusField& b) { return a -= b; }
  friend TorusField operator*(TorusField a, Complex s) { return a *= s; }
  friend TorusField operator*(Complex s, TorusField a) { return a *= s; }
  friend TorusField operator*(double s, TorusField a) { return a *= Complex(s); }

  bool operator==(const TorusField&) const = default;

 private:
  int max_mode_;
  std::vector<Complex> coeffs_;
};

}  // namespace fracwave
