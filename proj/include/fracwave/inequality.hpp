#pragma once

#include <cstdint>
#include <optional>

#include "fracwave/torus_field.hpp"

namespace fracwave {

/// lhs <= C * rhs_factor checked numerically. Inequality constants are never
/// asserted; ratio = lhs / rhs_factor is the reported quantity.
struct InequalityVerdict {
  double lhs = 0.0;
  double rhs_factor = 0.0;
  double ratio = 0.0;
  std::optional<double> passed_with_constant;
};

InequalityVerdict make_verdict(double lhs, double rhs_factor, std::optional<double> constant = std::nullopt);

/// F(u) = conj(u)|D|^a u + u|D|^a conj(u) - |D|^a |u|^2 on bandwidth 2K.
TorusField leibniz_defect(const TorusField& u, double alpha);

/// phi(x) = (|x|^a + |1-x|^a - 1) / (|x|^{a/2} |1-x|^{a/2}),
/// phi(0) = phi(1) = 0, phi(+-inf) = 2.
double phi_symbol(double x, double alpha);

/// sup |phi| over a compactified grid of the half line x >= 1/2 (phi is
/// symmetric about 1/2) together with the limit values. alpha in [1, 2].
double phi_supremum(double alpha);

/// max over 1 <= |k| <= kmax, |l| <= kmax of
///   | |l|^a + |k-l|^a - |k|^a - phi(l/k) |l|^{a/2} |k-l|^{a/2} |
/// divided by |l|^a + |k-l|^a + |k|^a.
double phi_identity_defect(double alpha, int kmax);

/// ||F(u)||_{H^n} against
///   alpha in [1, 2]:  ||u||_{H^{a/2}}^{1+th} ||u||_{H^{a+n}}^{1-th},  th = (a-1)/(2n+a)
///   alpha in (1/2, 1), n >= 1:  ||u||_{H^a}^{1+q} ||u||_{H^{a+n}}^{1-q},  q = (a-1/2)/n
InequalityVerdict check_leibniz_lemma(const TorusField& u, double alpha, int n);

struct KpvExponents {
  double s = 0.5, s1 = 0.5, s2 = 0.0;
  double p = 4.0 / 3.0, p1 = 4.0, p2 = 2.0;
};

/// ||f|D|^s g + g|D|^s f - |D|^s(fg)||_{L^p} against
/// || |D|^{s1} f ||_{L^{p1}} || |D|^{s2} g ||_{L^{p2}}, all on `grid` points.
/// Requires 0 < s < 1, s = s1 + s2, s1, s2 >= 0, 1/p = 1/p1 + 1/p2 and
/// p, p1, p2 in (1, inf); grid >= 2(Kf + Kg) + 2.
InequalityVerdict check_kpv(const TorusField& f, const TorusField& g, const KpvExponents& e, int grid);

/// ||w||_inf / (||w||_{H^{1/2}} [log(1 + ||w||_{H^s}/||w||_{H^{1/2}})]^{1/2}).
/// s > 1/2, w != 0.
InequalityVerdict brezis_gallouet_ratio(const TorusField& w, double s, int grid);

/// ||w||_{l^1} / (||w||_{l^2} ||w||_{h^1})^{1/2} with h^1 weight (1+k^2).
/// passed_with_constant is set to 1 when the ratio is <= 1 + 1e-12.
InequalityVerdict l1_interpolation_check(const TorusField& w);

/// H_v(h) = Pi_+(v conj(h)) for v, h without negative modes; max_mode of v.
TorusField hankel_apply(const TorusField& v, const TorusField& h);

struct HankelVerdict {
  /// ||H_v h|| against (sum_{k>=0} (1+k)|v_k|^2)^{1/2} ||h||; constant 1.
  InequalityVerdict proof_weight;
  /// ||H_v h|| against ||v||_{H^{1/2}} ||h||; constant 2^{1/4}.
  InequalityVerdict sobolev_weight;
};

HankelVerdict hankel_bound_check(const TorusField& v, const TorusField& h);

struct CounterexampleResult {
  TorusField field;       ///< u_N
  TorusField commutator;  ///< u|D|conj(u) - conj(u)|D|u
  double ratio = 0.0;     ///< ||commutator|| / (||u||_{H^{1/2}} ||u||_{H^1})
};

/// u_N = (log N)^{-1/2} sum_{n=1}^N e^{inx}/n. N >= 2.
CounterexampleResult log_counterexample(int N);

/// || |D|^s f ||_{L^p} against ||f||_inf + || |D|^{sp/2} f ||_{L^2}^{2/p} ||f||_inf^{1-2/p}.
/// f real valued, p > 2, s > 0, grid >= 2K + 2.
InequalityVerdict gagliardo_nirenberg_check(const TorusField& f, double s, double p, int grid);

/// Maximum ratio over a seeded ensemble. Members are random_field(K, ...) with
/// the given decay sigma; coefficients do not depend on K, so runs at K and 2K
/// share their low modes.
struct EnsembleSummary {
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  int members = 0;
};

EnsembleSummary leibniz_ensemble(double alpha, int n, int K, int members, std::uint64_t seed, double sigma);
EnsembleSummary hankel_ensemble(int K, int members, std::uint64_t seed, double sigma);
EnsembleSummary kpv_ensemble(const KpvExponents& e, int K, int members, std::uint64_t seed, double sigma);
EnsembleSummary gn_ensemble(double s, double p, int K, int members, std::uint64_t seed, double sigma);

/// Default ensemble decay: sigma = alpha + n + 2 keeps the H^{a+n} norm of the
/// ensemble converged as K grows.
inline double leibniz_default_sigma(double alpha, int n) { return alpha + n + 2.0; }

}  // namespace fracwave
