#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fracwave/torus_field.hpp"

namespace fracwave {

enum class Equation {
  FractionalNLS,  ///< i u_t = |D|^alpha u + |u|^2 u
  HalfWave,       ///< i u_t = |D| u + |u|^2 u
  Szego,          ///< i u_t = Pi_+(|u|^2 u)
  QuadraticPair,  ///< i u1_t = |D| u1 + u2 conj(u1),  i u2_t = |D| u2 + u1^2 / 2
};

struct EvolutionSpec {
  Equation equation = Equation::FractionalNLS;
  double alpha = 2.0;

  static EvolutionSpec fractional_nls(double alpha);
  static EvolutionSpec half_wave() { return {Equation::HalfWave, 1.0}; }
  static EvolutionSpec szego() { return {Equation::Szego, 1.0}; }
  static EvolutionSpec quadratic_pair() { return {Equation::QuadraticPair, 1.0}; }

  bool is_pair() const noexcept { return equation == Equation::QuadraticPair; }

  /// Exponent of |D| in the conserved Hamiltonian. Szego flows keep u in the
  /// range of Pi_+, where (|D|u, u) is the momentum, so H_1 is conserved there.
  double hamiltonian_exponent() const noexcept {
    return equation == Equation::FractionalNLS ? alpha : 1.0;
  }

  std::string name() const;
};

/// Parses "fnls", "halfwave", "szego" or "pair".
EvolutionSpec parse_evolution_spec(std::string_view variant, double alpha);

struct PairField {
  TorusField u1;
  TorusField u2;

  PairField(TorusField first, TorusField second);
  int max_mode() const noexcept { return u1.max_mode(); }
};

/// Q = ||u||^2/2, M = (Du, u), H = (|D|^alpha u, u)/2 + ||u||_{L^4}^4/4.
/// For pairs: Qtilde = ||u1||^2 + 2||u2||^2,
/// Htilde = [(|D|u1,u1) + (|D|u2,u2) + int Re(u1^2 conj u2)]/2, and the scalar
/// slots carry Q = Qtilde/2, M = (Du1,u1) + (Du2,u2), H = Htilde.
struct ConservedReport {
  double Q = 0.0;
  double M = 0.0;
  double H = 0.0;
  std::optional<double> Qtilde;
  std::optional<double> Htilde;
};

ConservedReport conserved_quantities(const TorusField& u, double alpha);
ConservedReport pair_conserved(const PairField& p);

/// S(t)u = e^{-it|D|^alpha} u.
TorusField linear_propagate(const TorusField& u, double t, double alpha);

/// Exact flow of i u_t = |u|^2 u evaluated on a grid_size-point grid and
/// interpolated back to |k| <= K. grid_size >= 4K+2.
TorusField nonlinear_phase_step(const TorusField& u, double tau, int grid_size);

/// du/dt for a scalar equation, with the cubic term Galerkin-truncated to K.
TorusField equation_rhs(const TorusField& u, const EvolutionSpec& spec);

/// Thrown when a state stops being finite; carries the last valid time.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double last_valid_time)
      : std::runtime_error(what), last_valid_time_(last_valid_time) {}
  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

using FieldObserver = std::function<void(double t, const TorusField& u)>;
using PairObserver = std::function<void(double t, const PairField& p)>;

/// Advances u0 to time T (T may be negative) with steps of at most dt.
/// The observer sees t = 0, every sample_every-th step, and the final time.
///
/// FractionalNLS and HalfWave use Strang splitting with exact linear and
/// nonlinear substeps; Szego uses RK4 on the full right-hand side and rejects
/// dt > 0.5/||u0||_{L^inf}^2. Negative T runs the forward solver on
/// conj-coefficient data: u(t, x) -> conj(u(-t, -x)) maps solutions to
/// solutions for all four equations.
TorusField evolve(const TorusField& u0, const EvolutionSpec& spec, double T, double dt, int sample_every,
                  const FieldObserver& observe = {});

/// Strang splitting: exact linear substeps around an RK4 nonlinear substep.
PairField evolve(const PairField& p0, const EvolutionSpec& spec, double T, double dt, int sample_every,
                 const PairObserver& observe = {});

/// Time-sampled scalar diagnostics of one run. Rows are sorted by t.
struct TrajectoryRecord {
  std::vector<std::string> columns;  ///< columns[0] is "t"
  std::vector<std::vector<double>> rows;
  std::vector<TorusField> states;    ///< filled only when states are kept
  bool truncated = false;
  double last_valid_time = 0.0;
  std::string failure;

  std::size_t column_index(std::string_view name) const;
  std::vector<double> column(std::string_view name) const;
  std::vector<double> times() const { return column("t"); }
};

/// Runs evolve and records t, Q, M, H, Linf (scalar) or
/// t, Qtilde, Htilde, M, Linf_u1, Linf_u2 (pair). Blow-ups are caught and
/// reported through `truncated`.
TrajectoryRecord record_trajectory(const TorusField& u0, const EvolutionSpec& spec, double T, double dt,
                                   int sample_every, bool keep_states = false);
TrajectoryRecord record_trajectory(const PairField& p0, const EvolutionSpec& spec, double T, double dt,
                                   int sample_every);

/// Thrown when the Duhamel fixed-point iteration fails to contract.
class PicardDivergence : public std::runtime_error {
 public:
  PicardDivergence(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), residuals_(std::move(residuals)) {}
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::vector<double> residuals_;
};

/// Fixed point of u(t) = S(t)u0 - i int_0^t S(t-s) P_K(|u|^2 u)(s) ds on
/// [0, T], iterated in the interaction picture with n_quad Chebyshev-Lobatto
/// nodes in s. Returns u(T). Stops once the update falls below
/// tol * max(1, ||u0||); throws PicardDivergence when residuals grow or
/// max_iter is exhausted.
TorusField picard_iterate(const TorusField& u0, double alpha, double T, int n_quad, int max_iter, double tol);

}  // namespace fracwave
