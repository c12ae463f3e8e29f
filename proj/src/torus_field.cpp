#include "fracwave/torus_field.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fracwave {

TorusField::TorusField(int max_mode) : max_mode_(max_mode) {
  if (max_mode < 0) throw std::invalid_argument("TorusField: max_mode must be >= 0");
  coeffs_.assign(static_cast<std::size_t>(2 * max_mode + 1), Complex{});
}

TorusField::TorusField(int max_mode, std::vector<Complex> coeffs)
    : max_mode_(max_mode), coeffs_(std::move(coeffs)) {
  if (max_mode < 0) throw std::invalid_argument("TorusField: max_mode must be >= 0");
  if (coeffs_.size() != static_cast<std::size_t>(2 * max_mode + 1)) {
    throw std::invalid_argument("TorusField: expected " + std::to_string(2 * max_mode + 1) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

TorusField TorusField::mode(int max_mode, int k, Complex amplitude) {
  if (k < -max_mode || k > max_mode) throw std::out_of_range("TorusField::mode: |k| exceeds max_mode");
  TorusField f(max_mode);
  f.coeffs_[static_cast<std::size_t>(k + max_mode)] = amplitude;
  return f;
}

TorusField TorusField::constant(int max_mode, Complex value) { return mode(max_mode, 0, value); }

TorusField TorusField::resized(int new_max_mode) const {
  TorusField out(new_max_mode);
  const int m = std::min(max_mode_, new_max_mode);
  for (int k = -m; k <= m; ++k) out.coeffs_[static_cast<std::size_t>(k + new_max_mode)] = coeff(k);
  return out;
}

TorusField TorusField::conj() const {
  TorusField out(max_mode_);
  for (int k = -max_mode_; k <= max_mode_; ++k) {
    out.coeffs_[static_cast<std::size_t>(k + max_mode_)] = std::conj(coeff(-k));
  }
  return out;
}

TorusField TorusField::conj_coeffs() const {
  TorusField out(*this);
  for (auto& c : out.coeffs_) c = std::conj(c);
  return out;
}

double TorusField::max_abs_diff(const TorusField& other) const {
  const int m = std::max(max_mode_, other.max_mode_);
  double d = 0.0;
  for (int k = -m; k <= m; ++k) d = std::max(d, std::abs(coeff(k) - other.coeff(k)));
  return d;
}

TorusField& TorusField::operator+=(const TorusField& rhs) {
  if (rhs.max_mode_ != max_mode_) throw std::invalid_argument("TorusField: max_mode mismatch in +");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

TorusField& TorusField::operator-=(const TorusField& rhs) {
  if (rhs.max_mode_ != max_mode_) throw std::invalid_argument("TorusField: max_mode mismatch in -");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

TorusField& TorusField::operator*=(Complex scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

}  // namespace fracwave
