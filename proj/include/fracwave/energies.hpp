#pragma once

#include <cstddef>

#include "fracwave/dynamics.hpp"
#include "fracwave/torus_field.hpp"

namespace fracwave {

struct ModifiedEnergyParams {
  double alpha = 2.0;
  int n = 0;
  double eps = 1.0;    ///< min(1, 2 alpha / (2n + alpha))
  double theta = 0.0;  ///< (alpha - 1) / (2n + alpha)

  static ModifiedEnergyParams make(double alpha, int n);
};

/// E = ||u||^2 + J0 + J1 + J2 with
///   J0 = || |D|^{alpha+n} u ||^2
///   J1 = 2 Re(|D|^{alpha+n} u, |D|^n (|u|^2 u))
///   J2 = -1/2 || |D|^{alpha/2+n} (|u|^2) ||^2
/// The products inside J1 and J2 are taken on their full bandwidth.
struct ModifiedEnergyReport {
  double E = 0.0;
  double mass = 0.0;  ///< ||u||_{L^2}^2
  double J0 = 0.0;
  double J1 = 0.0;
  double J2 = 0.0;
  bool sandwich_ok = false;  ///< ||u||^2_{H^{a+n}}/2 <= E <= 2 ||u||^2_{H^{a+n}}
  double threshold = 0.0;    ///< growth_gate(||u||_{H^{a+n}}); NaN when alpha < 1
};

/// gate_constant is C in the alpha = 1 branch of the gate.
ModifiedEnergyReport modified_energy(const TorusField& u, double alpha, int n, double gate_constant = 1.0);

bool sandwich_check(const TorusField& u, double alpha, int n);

/// g(x) = x^{eps/2} for alpha > 1 and
/// x^{eps/2} / log(1 + x^2 / (C^2 u0_half_norm^4)) for alpha = 1.
/// Throws std::domain_error for alpha < 1, where no gate is defined.
double growth_gate(double x, double alpha, int n, double u0_half_norm, double gate_constant = 1.0);

/// Whether g(||u||_{H^{a+n}}) >= margin * ||u||_{H^{a/2}}^4, the regime in
/// which the corrective terms are small against ||u||^2_{H^{a+n}}.
bool gate_admissible(const TorusField& u, double alpha, int n, double margin = 100.0, double gate_constant = 1.0);

/// Largest lambda in [lo, hi] with gate_admissible(lambda * profile), found by
/// bisection. Returns lo when even lo fails.
double admissible_amplitude(const TorusField& profile, double alpha, int n, double lo = 1e-8, double hi = 1e4,
                            double margin = 100.0);

/// Chain-rule time derivative of E along i u_t = |D|^alpha u + P_K(|u|^2 u).
struct EnergyRate {
  double dE = 0.0;
  /// 2 Im(|D|^{alpha+n} u_t, |D|^n u_t), which vanishes identically.
  double cancellation = 0.0;
  /// Magnitude of (|D|^{alpha+n} u_t, |D|^n u_t), the scale of the term above.
  double cancellation_scale = 0.0;
};

EnergyRate modified_energy_rate(const TorusField& u, double alpha, int n);

struct EnergyConsistencyReport {
  double max_mismatch = 0.0;          ///< max |central FD of E - analytic dE/dt|
  double max_rate = 0.0;              ///< max |analytic dE/dt|
  double max_cancellation_rel = 0.0;  ///< max |cancellation| / cancellation_scale
  std::size_t samples = 0;
};

/// Compares a central difference of E along the kept states of traj with
/// modified_energy_rate. traj must hold >= 3 states on a uniform time grid.
EnergyConsistencyReport energy_derivative_consistency(const TrajectoryRecord& traj, double alpha, int n);

}  // namespace fracwave
