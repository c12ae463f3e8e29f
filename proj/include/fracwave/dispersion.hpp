#pragma once

#include <cstdint>
#include <vector>

#include "fracwave/inequality.hpp"
#include "fracwave/torus_field.hpp"

namespace fracwave {

/// Littlewood-Paley bump. With b(x) = exp(-1 / ((x - 1/2)(2 - x))) on (1/2, 2),
///   psi(x) = b(x) / sum_{m in Z} b(2^m x),
/// so psi is smooth, positive exactly on (1/2, 2) and
/// sum_{j>=1} psi(2^-j x) = 1 for every x >= 2.
struct DyadicCutoff {
  static double bump(double x);
  static double psi(double x);
  /// sum_{j>=1} psi(2^-j x)
  static double partition_sum(double x);
};

bool is_dyadic(long N);

/// Delta_N u: multiplier psi(|k|/N) for N >= 2, and for N = 1 the complement
/// 1 - sum_{j>=1} psi(|k|/2^j). N must be a power of two.
TorusField lp_block(const TorusField& u, long N);

/// kappa_N(x_j, t) = sum_k psi(|k|/N) e^{i(k x_j - |k|^a t)} at x_j = 2 pi j / x_grid.
std::vector<Complex> kernel_kappa(long N, double t, double alpha, int x_grid);

/// Direct evaluation of kappa_N at one point.
Complex kernel_kappa_at(long N, double x, double t, double alpha);

/// sup_x |kappa_N(x, t)|: maximum over an x_grid sample refined by golden
/// section on direct evaluations around the leading grid maxima.
double kernel_sup(long N, double t, double alpha, int x_grid);

struct DispersionSample {
  long N = 0;
  double t = 0.0;
  double sup = 0.0;
  double ratio = 0.0;  ///< sup * t^{1/2} / N^{1-a/2}
  bool fitted = false; ///< false when t < 4 / N^a
};

struct DispersionFit {
  double C = 0.0;                  ///< max ratio over fitted samples
  std::vector<long> N;             ///< the N_list
  std::vector<double> C_per_N;     ///< max ratio per N over fitted samples
  double variation = 0.0;          ///< max(C_per_N) / min(C_per_N)
  std::vector<DispersionSample> samples;
};

/// Empirical C in sup_x |kappa_N(., t)| <= C t^{-1/2} N^{1-a/2}.
/// alpha in (2/3, 1); t_list in (0, 1]; samples with t < 4/N^a are reported
/// but not fitted.
DispersionFit dispersion_constant_fit(double alpha, const std::vector<long>& N_list, const std::vector<double>& t_list);

/// || S(t) Delta_N u ||_{L^4((0,1), L^inf)} against ||u||_{L^2} N^{1/2 - a/4}.
/// Midpoint rule in t. Requires x_grid >= 8N and t_quad >= 2 (2N)^a.
InequalityVerdict strichartz_l4linf(const TorusField& u, long N, double alpha, int t_quad, int x_grid);

/// || S(t) u ||_{L^4((0,1), L^inf)} against ||u||_{H^gamma}, gamma > 1/2 - a/4.
/// Requires x_grid >= 8K and t_quad >= 2 K^a.
InequalityVerdict strichartz_global(const TorusField& u, double alpha, double gamma, int t_quad, int x_grid);

/// Lemma-form ratios over random flat-spectrum fields supported on |k| <= 2N,
/// with the smallest grids the guards allow.
EnsembleSummary strichartz_ensemble(double alpha, long N, int members, std::uint64_t seed);

/// w_i = sin^4(pi i / (n - 1)), a taper vanishing to third order at both ends.
std::vector<double> taper_window(std::size_t n);

/// ||u||^2_{X^{s,b}} = (1/2pi) sum_k int (1+k^2)^s (1 + |tau + |k|^a|^2)^b |F u(tau, k)|^2 dtau
/// with F u(tau, k) = int w(t) u_k(t) e^{-i tau t} dt, approximated by a
/// zero-padded DFT of the windowed samples (pad * n points in tau).
/// times must be uniform; window defaults to taper_window. Returns the norm
/// (not its square).
double bourgain_norm(const std::vector<double>& times, const std::vector<TorusField>& samples, double s, double b,
                     double alpha, std::vector<double> window = {}, int pad = 4);

}  // namespace fracwave
