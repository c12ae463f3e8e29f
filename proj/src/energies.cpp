#include "fracwave/energies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fracwave/spectral.hpp"

namespace fracwave {
namespace {

void check_params(double alpha, int n) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("modified energy: alpha must lie in (0, 2]");
  if (n < 0) throw std::invalid_argument("modified energy: n must be >= 0");
}

double sq_norm(const TorusField& u) {
  double acc = 0.0;
  for (const auto& c : u.coeffs()) acc += std::norm(c);
  return acc;
}

}  // namespace

ModifiedEnergyParams ModifiedEnergyParams::make(double alpha, int n) {
  check_params(alpha, n);
  const double denom = 2.0 * n + alpha;
  return {alpha, n, std::min(1.0, 2.0 * alpha / denom), (alpha - 1.0) / denom};
}

double growth_gate(double x, double alpha, int n, double u0_half_norm, double gate_constant) {
  const auto p = ModifiedEnergyParams::make(alpha, n);
  if (x < 0.0) throw std::invalid_argument("growth_gate: x must be >= 0");
  if (alpha > 1.0) return std::pow(x, 0.5 * p.eps);
  if (alpha < 1.0) throw std::domain_error("growth_gate: no gate is defined for alpha < 1");
  if (!(u0_half_norm > 0.0) || !(gate_constant > 0.0)) {
    throw std::invalid_argument("growth_gate: alpha = 1 needs positive u0_half_norm and C");
  }
  if (x == 0.0) return 0.0;
  const double scale = gate_constant * u0_half_norm * u0_half_norm;
  return std::pow(x, 0.5 * p.eps) / std::log1p((x / scale) * (x / scale));
}

ModifiedEnergyReport modified_energy(const TorusField& u, double alpha, int n, double gate_constant) {
  check_params(alpha, n);
  const double m = alpha + n;
  ModifiedEnergyReport r;
  const TorusField Dmu = fractional_derivative(u, m);
  r.mass = sq_norm(u);
  r.J0 = sq_norm(Dmu);
  r.J1 = 2.0 * inner(Dmu, fractional_derivative(cubic_term_full(u), n)).real();
  r.J2 = -0.5 * sq_norm(fractional_derivative(pointwise_modulus_squared(u), 0.5 * alpha + n));
  r.E = r.mass + r.J0 + r.J1 + r.J2;

  const double top = sobolev_norm(u, m);
  r.sandwich_ok = 0.5 * top * top <= r.E && r.E <= 2.0 * top * top;
  if (alpha < 1.0) {
    r.threshold = std::numeric_limits<double>::quiet_NaN();
  } else {
    const double half = sobolev_norm(u, 0.5 * alpha);
    r.threshold = (alpha == 1.0 && half == 0.0) ? 0.0 : growth_gate(top, alpha, n, half, gate_constant);
  }
  return r;
}

bool sandwich_check(const TorusField& u, double alpha, int n) { return modified_energy(u, alpha, n).sandwich_ok; }

bool gate_admissible(const TorusField& u, double alpha, int n, double margin, double gate_constant) {
  const double half = sobolev_norm(u, 0.5 * alpha);
  if (half == 0.0) return true;
  const double g = growth_gate(sobolev_norm(u, alpha + n), alpha, n, half, gate_constant);
  return g >= margin * std::pow(half, 4);
}

double admissible_amplitude(const TorusField& profile, double alpha, int n, double lo, double hi, double margin) {
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("admissible_amplitude: need 0 < lo < hi");
  if (!gate_admissible(lo * profile, alpha, n, margin)) return lo;
  if (gate_admissible(hi * profile, alpha, n, margin)) return hi;
  // Bisect in log(lambda); the gate side grows slower than lambda^4.
  for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-12; ++it) {
    const double mid = std::sqrt(lo * hi);
    (gate_admissible(mid * profile, alpha, n, margin) ? lo : hi) = mid;
  }
  return lo;
}

EnergyRate modified_energy_rate(const TorusField& u, double alpha, int n) {
  check_params(alpha, n);
  const double m = alpha + n;
  const TorusField ut = equation_rhs(u, EvolutionSpec::fractional_nls(alpha));
  const TorusField uc = u.conj();
  const TorusField utc = ut.conj();

  const TorusField rho = product(u, uc);
  const TorusField cubic = product(rho, u);
  const TorusField rho_t = product(uc, ut) + product(u, utc);
  // d/dt (|u|^2 u) = 2|u|^2 u_t + u^2 conj(u_t)
  const TorusField cubic_t = 2.0 * product(rho, ut) + product(product(u, u), utc);

  const TorusField Dmu = fractional_derivative(u, m);
  const TorusField Dmut = fractional_derivative(ut, m);
  const double dmass = 2.0 * inner(u, ut).real();
  const double dJ0 = 2.0 * inner(Dmu, Dmut).real();
  const double dJ1 = 2.0 * inner(Dmut, fractional_derivative(cubic, n)).real() +
                     2.0 * inner(Dmu, fractional_derivative(cubic_t, n)).real();
  const double p = 0.5 * alpha + n;
  const double dJ2 = -inner(fractional_derivative(rho, p), fractional_derivative(rho_t, p)).real();

  const Complex c = inner(Dmut, fractional_derivative(ut, n));
  return {dmass + dJ0 + dJ1 + dJ2, 2.0 * c.imag(), std::abs(c)};
}

EnergyConsistencyReport energy_derivative_consistency(const TrajectoryRecord& traj, double alpha, int n) {
  const auto& states = traj.states;
  if (states.size() < 3) throw std::invalid_argument("energy_derivative_consistency: need >= 3 kept states");
  const auto t = traj.times();
  if (t.size() != states.size()) throw std::invalid_argument("energy_derivative_consistency: rows and states differ");
  const double h = t[1] - t[0];
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h))) {
      throw std::invalid_argument("energy_derivative_consistency: samples must be uniformly spaced");
    }
  }
  std::vector<double> E;
  E.reserve(states.size());
  for (const auto& s : states) E.push_back(modified_energy(s, alpha, n).E);

  EnergyConsistencyReport rep;
  for (std::size_t i = 1; i + 1 < states.size(); ++i) {
    const double fd = (E[i + 1] - E[i - 1]) / (2.0 * h);
    const auto rate = modified_energy_rate(states[i], alpha, n);
    rep.max_mismatch = std::max(rep.max_mismatch, std::abs(fd - rate.dE));
    rep.max_rate = std::max(rep.max_rate, std::abs(rate.dE));
    if (rate.cancellation_scale > 0.0) {
      rep.max_cancellation_rel =
          std::max(rep.max_cancellation_rel, std::abs(rate.cancellation) / rate.cancellation_scale);
    }
    ++rep.samples;
  }
  return rep;
}

}  // namespace fracwave
