#include "fracwave/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracwave/rng.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave {

InequalityVerdict make_verdict(double lhs, double rhs_factor, std::optional<double> constant) {
  InequalityVerdict v;
  v.lhs = lhs;
  v.rhs_factor = rhs_factor;
  if (rhs_factor > 0.0) {
    v.ratio = lhs / rhs_factor;
  } else {
    v.ratio = lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  if (constant && v.ratio <= *constant) v.passed_with_constant = constant;
  return v;
}

TorusField leibniz_defect(const TorusField& u, double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("leibniz_defect: alpha must lie in (0, 2]");
  const TorusField uc = u.conj();
  const TorusField a = product(uc, fractional_derivative(u, alpha));
  return a + a.conj() - fractional_derivative(product(uc, u), alpha);
}

double phi_symbol(double x, double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("phi_symbol: alpha must lie in (0, 2]");
  if (std::isinf(x)) return 2.0;
  if (x == 0.0 || x == 1.0) return 0.0;
  const double a = std::abs(x);
  const double b = std::abs(1.0 - x);
  return (std::pow(a, alpha) + std::pow(b, alpha) - 1.0) / (std::pow(a, 0.5 * alpha) * std::pow(b, 0.5 * alpha));
}

double phi_supremum(double alpha) {
  if (!(alpha >= 1.0 && alpha <= 2.0)) throw std::invalid_argument("phi_supremum: alpha must lie in [1, 2]");
  // x = 1/2 + tan(pi s / 2), s in [0, 1), covers the half line x >= 1/2.
  auto at = [alpha](double s) { return std::abs(phi_symbol(0.5 + std::tan(0.5 * std::numbers::pi * s), alpha)); };
  constexpr int kPoints = 200000;
  double best = 2.0;  // limit value at +-infinity
  int best_i = -1;
  for (int i = 0; i < kPoints; ++i) {
    const double v = at(static_cast<double>(i) / kPoints);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  if (best_i >= 0) {
    // Golden-section refinement around the best grid point.
    double lo = std::max(0.0, (best_i - 1.0) / kPoints);
    double hi = std::min(1.0 - 1e-15, (best_i + 1.0) / kPoints);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 100; ++it) {
      const double a = hi - g * (hi - lo);
      const double b = lo + g * (hi - lo);
      if (at(a) > at(b)) {
        hi = b;
      } else {
        lo = a;
      }
    }
    best = std::max(best, at(0.5 * (lo + hi)));
  }
  return best;
}

double phi_identity_defect(double alpha, int kmax) {
  if (kmax < 1) throw std::invalid_argument("phi_identity_defect: kmax must be >= 1");
  double worst = 0.0;
  for (int k = -kmax; k <= kmax; ++k) {
    if (k == 0) continue;
    const double ak = std::pow(std::abs(static_cast<double>(k)), alpha);
    for (int l = -kmax; l <= kmax; ++l) {
      const double al = std::pow(std::abs(static_cast<double>(l)), alpha);
      const double akl = std::pow(std::abs(static_cast<double>(k - l)), alpha);
      const double lhs = al + akl - ak;
      const double rhs = phi_symbol(static_cast<double>(l) / k, alpha) * std::sqrt(al) * std::sqrt(akl);
      worst = std::max(worst, std::abs(lhs - rhs) / (al + akl + ak));
    }
  }
  return worst;
}

InequalityVerdict check_leibniz_lemma(const TorusField& u, double alpha, int n) {
  if (n < 0) throw std::invalid_argument("check_leibniz_lemma: n must be >= 0");
  double rhs = 0.0;
  if (alpha >= 1.0 && alpha <= 2.0) {
    const double th = (alpha - 1.0) / (2.0 * n + alpha);
    rhs = std::pow(sobolev_norm(u, 0.5 * alpha), 1.0 + th) * std::pow(sobolev_norm(u, alpha + n), 1.0 - th);
  } else if (alpha > 0.5 && alpha < 1.0) {
    if (n < 1) throw std::invalid_argument("check_leibniz_lemma: the alpha < 1 branch requires n >= 1");
    const double q = (alpha - 0.5) / n;
    rhs = std::pow(sobolev_norm(u, alpha), 1.0 + q) * std::pow(sobolev_norm(u, alpha + n), 1.0 - q);
  } else {
    throw std::invalid_argument("check_leibniz_lemma: alpha must lie in (1/2, 2]");
  }
  return make_verdict(sobolev_norm(leibniz_defect(u, alpha), n), rhs);
}

InequalityVerdict check_kpv(const TorusField& f, const TorusField& g, const KpvExponents& e, int grid) {
  if (!(e.s > 0.0 && e.s < 1.0)) throw std::invalid_argument("check_kpv: need 0 < s < 1");
  if (!(e.s1 >= 0.0 && e.s2 >= 0.0)) throw std::invalid_argument("check_kpv: need s1, s2 >= 0");
  if (std::abs(e.s - e.s1 - e.s2) > 1e-12) throw std::invalid_argument("check_kpv: need s = s1 + s2");
  for (double p : {e.p, e.p1, e.p2}) {
    if (!(p > 1.0 && std::isfinite(p))) throw std::invalid_argument("check_kpv: need p, p1, p2 in (1, inf)");
  }
  if (std::abs(1.0 / e.p - 1.0 / e.p1 - 1.0 / e.p2) > 1e-12) {
    throw std::invalid_argument("check_kpv: need 1/p = 1/p1 + 1/p2");
  }
  const int L = f.max_mode() + g.max_mode();
  if (grid < 2 * L + 2) throw std::invalid_argument("check_kpv: grid must be >= 2(Kf + Kg) + 2");
  const TorusField defect =
      product(f, fractional_derivative(g, e.s)) + product(g, fractional_derivative(f, e.s)) -
      fractional_derivative(product(f, g), e.s);
  const double lhs = lp_norm(defect, e.p, grid);
  const double rhs =
      lp_norm(fractional_derivative(f, e.s1), e.p1, grid) * lp_norm(fractional_derivative(g, e.s2), e.p2, grid);
  return make_verdict(lhs, rhs);
}

InequalityVerdict brezis_gallouet_ratio(const TorusField& w, double s, int grid) {
  if (!(s > 0.5)) throw std::invalid_argument("brezis_gallouet_ratio: need s > 1/2");
  const double half = sobolev_norm(w, 0.5);
  if (half == 0.0) throw std::invalid_argument("brezis_gallouet_ratio: w must be nonzero");
  const double factor = half * std::sqrt(std::log1p(sobolev_norm(w, s) / half));
  return make_verdict(lp_norm(w, kInfinity, grid), factor);
}

InequalityVerdict l1_interpolation_check(const TorusField& w) {
  double l1 = 0.0;
  for (const auto& c : w.coeffs()) l1 += std::abs(c);
  if (l1 == 0.0) throw std::invalid_argument("l1_interpolation_check: sequence must be nonzero");
  return make_verdict(l1, std::sqrt(l2_norm(w) * sobolev_norm(w, 1.0)), 1.0 + 1e-12);
}

namespace {

void require_nonnegative_modes(const TorusField& u, const char* what) {
  for (int k = 1; k <= u.max_mode(); ++k) {
    if (u.coeff(-k) != Complex{}) throw std::invalid_argument(std::string(what) + " has negative Fourier modes");
  }
}

}  // namespace

TorusField hankel_apply(const TorusField& v, const TorusField& h) {
  require_nonnegative_modes(v, "hankel_apply: v");
  require_nonnegative_modes(h, "hankel_apply: h");
  return szego_project(product(v, h.conj())).resized(v.max_mode());
}

HankelVerdict hankel_bound_check(const TorusField& v, const TorusField& h) {
  const double lhs = l2_norm(hankel_apply(v, h));
  double weight = 0.0;
  for (int k = 0; k <= v.max_mode(); ++k) weight += (1.0 + k) * std::norm(v.coeff(k));
  const double hn = l2_norm(h);
  return {make_verdict(lhs, std::sqrt(weight) * hn, 1.0 + 1e-12),
          make_verdict(lhs, sobolev_norm(v, 0.5) * hn, std::pow(2.0, 0.25) + 1e-12)};
}

CounterexampleResult log_counterexample(int N) {
  if (N < 2) throw std::invalid_argument("log_counterexample: N must be >= 2");
  std::vector<Complex> c(static_cast<std::size_t>(2 * N + 1));
  const double scale = 1.0 / std::sqrt(std::log(static_cast<double>(N)));
  for (int k = 1; k <= N; ++k) c[static_cast<std::size_t>(k + N)] = scale / k;
  TorusField u(N, std::move(c));
  const TorusField uc = u.conj();
  TorusField comm = product(u, fractional_derivative(uc, 1.0)) - product(uc, fractional_derivative(u, 1.0));
  const double ratio = l2_norm(comm) / (sobolev_norm(u, 0.5) * sobolev_norm(u, 1.0));
  return {std::move(u), std::move(comm), ratio};
}

InequalityVerdict gagliardo_nirenberg_check(const TorusField& f, double s, double p, int grid) {
  if (!(p > 2.0)) throw std::invalid_argument("gagliardo_nirenberg_check: need p > 2");
  if (!(s > 0.0)) throw std::invalid_argument("gagliardo_nirenberg_check: need s > 0");
  double scale = 0.0;
  for (const auto& c : f.coeffs()) scale = std::max(scale, std::abs(c));
  if (imaginary_defect(f) > 1e-12 * std::max(1.0, scale)) {
    throw std::invalid_argument("gagliardo_nirenberg_check: f must be real valued");
  }
  const double sup = lp_norm(f, kInfinity, grid);
  const double lhs = lp_norm(fractional_derivative(f, s), p, grid);
  const double rhs = sup + std::pow(l2_norm(fractional_derivative(f, 0.5 * s * p)), 2.0 / p) * std::pow(sup, 1.0 - 2.0 / p);
  return make_verdict(lhs, rhs);
}

namespace {

template <class Ratio>
EnsembleSummary ensemble(int members, Ratio&& ratio) {
  if (members < 1) throw std::invalid_argument("ensemble: members must be >= 1");
  EnsembleSummary out;
  double sum = 0.0;
  for (int m = 0; m < members; ++m) {
    const double r = ratio(static_cast<std::uint32_t>(m));
    out.max_ratio = std::max(out.max_ratio, r);
    sum += r;
  }
  out.members = members;
  out.mean_ratio = sum / members;
  return out;
}

}  // namespace

EnsembleSummary leibniz_ensemble(double alpha, int n, int K, int members, std::uint64_t seed, double sigma) {
  return ensemble(members, [&](std::uint32_t m) {
    return check_leibniz_lemma(random_field(K, sigma, 1.0, seed, m), alpha, n).ratio;
  });
}

EnsembleSummary hankel_ensemble(int K, int members, std::uint64_t seed, double sigma) {
  RandomFieldSpec spec;
  spec.sigma = sigma;
  spec.nonnegative_only = true;
  return ensemble(members, [&](std::uint32_t m) {
    return hankel_bound_check(random_field(K, spec, seed, m, 0), random_field(K, spec, seed, m, 1)).proof_weight.ratio;
  });
}

EnsembleSummary kpv_ensemble(const KpvExponents& e, int K, int members, std::uint64_t seed, double sigma) {
  RandomFieldSpec spec;
  spec.sigma = sigma;
  const int grid = transform_size(8 * K + 2);
  return ensemble(members, [&](std::uint32_t m) {
    return check_kpv(random_field(K, spec, seed, m, 0), random_field(K, spec, seed, m, 1), e, grid).ratio;
  });
}

EnsembleSummary gn_ensemble(double s, double p, int K, int members, std::uint64_t seed, double sigma) {
  RandomFieldSpec spec;
  spec.sigma = sigma;
  spec.real_valued = true;
  const int grid = transform_size(8 * K + 2);
  return ensemble(members, [&](std::uint32_t m) {
    return gagliardo_nirenberg_check(random_field(K, spec, seed, m), s, p, grid).ratio;
  });
}

}  // namespace fracwave
