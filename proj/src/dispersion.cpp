#include "fracwave/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"
#include "fracwave/rng.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave {
namespace {

constexpr double kPi = std::numbers::pi;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("alpha must lie in (0, 2]");
}

double omega(long k, double alpha) { return std::pow(std::abs(static_cast<double>(k)), alpha); }

// Coefficients of kappa_N(., t) as a field on |k| <= 2N.
TorusField kappa_field(long N, double t, double alpha) {
  const int K = static_cast<int>(2 * N);
  std::vector<Complex> c(static_cast<std::size_t>(2 * K + 1));
  for (int k = -K; k <= K; ++k) {
    const double w = DyadicCutoff::psi(std::abs(k) / static_cast<double>(N));
    if (w != 0.0) c[static_cast<std::size_t>(k + K)] = std::polar(w, -omega(k, alpha) * t);
  }
  return TorusField(K, std::move(c));
}

// L^4 over t in (0, 1) of the grid maximum in x, midpoint rule.
template <class Values>
double l4_linf(int t_quad, Values&& values) {
  double acc = 0.0;
  for (int i = 0; i < t_quad; ++i) {
    const double t = (i + 0.5) / t_quad;
    double sup = 0.0;
    for (const auto& v : values(t)) sup = std::max(sup, std::abs(v));
    acc += std::pow(sup, 4);
  }
  return std::pow(acc / t_quad, 0.25);
}

}  // namespace

double DyadicCutoff::bump(double x) {
  if (!(x > 0.5 && x < 2.0)) return 0.0;
  return std::exp(-1.0 / ((x - 0.5) * (2.0 - x)));
}

double DyadicCutoff::psi(double x) {
  const double b = bump(x);
  if (b == 0.0) return 0.0;
  // On (1/2, 2) only m in {-1, 0, 1} can contribute to the normalizer.
  return b / (bump(0.5 * x) + b + bump(2.0 * x));
}

double DyadicCutoff::partition_sum(double x) {
  double acc = 0.0;
  for (int j = 1; j < 1100; ++j) {
    const double y = std::ldexp(x, -j);
    if (y <= 0.5) break;
    acc += psi(y);
  }
  return acc;
}

bool is_dyadic(long N) { return N >= 1 && (N & (N - 1)) == 0; }

TorusField lp_block(const TorusField& u, long N) {
  if (!is_dyadic(N)) throw std::invalid_argument("lp_block: N must be a power of two");
  if (N >= 2) return apply_multiplier(u, [N](int k) { return DyadicCutoff::psi(std::abs(k) / static_cast<double>(N)); });
  return apply_multiplier(u, [](int k) { return 1.0 - DyadicCutoff::partition_sum(std::abs(k)); });
}

std::vector<Complex> kernel_kappa(long N, double t, double alpha, int x_grid) {
  check_alpha(alpha);
  if (!is_dyadic(N) || N < 2) throw std::invalid_argument("kernel_kappa: N must be a power of two >= 2");
  if (x_grid < 1) throw std::invalid_argument("kernel_kappa: x_grid must be positive");
  return to_grid(kappa_field(N, t, alpha), x_grid);
}

Complex kernel_kappa_at(long N, double x, double t, double alpha) {
  Complex acc{};
  for (long k = N / 2 + 1; k < 2 * N; ++k) {
    const double w = DyadicCutoff::psi(static_cast<double>(k) / static_cast<double>(N));
    const double ph = -omega(k, alpha) * t;
    acc += w * (std::polar(1.0, ph + k * x) + std::polar(1.0, ph - k * x));
  }
  return acc;
}

double kernel_sup(long N, double t, double alpha, int x_grid) {
  const auto values = kernel_kappa(N, t, alpha, x_grid);
  const int M = static_cast<int>(values.size());
  std::vector<int> order(values.size());
  for (int j = 0; j < M; ++j) order[static_cast<std::size_t>(j)] = j;
  const int keep = std::min(M, 3);
  std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                    [&](int a, int b) { return std::abs(values[static_cast<std::size_t>(a)]) > std::abs(values[static_cast<std::size_t>(b)]); });
  double best = std::abs(values[static_cast<std::size_t>(order[0])]);
  const double h = 2.0 * kPi / M;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  auto f = [&](double x) { return std::abs(kernel_kappa_at(N, x, t, alpha)); };
  for (int r = 0; r < keep; ++r) {
    double lo = (order[static_cast<std::size_t>(r)] - 1) * h;
    double hi = (order[static_cast<std::size_t>(r)] + 1) * h;
    double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    double fa = f(a), fb = f(b);
    for (int it = 0; it < 60; ++it) {
      if (fa > fb) {
        hi = b;
        b = a;
        fb = fa;
        a = hi - g * (hi - lo);
        fa = f(a);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + g * (hi - lo);
        fb = f(b);
      }
    }
    best = std::max({best, fa, fb});
  }
  return best;
}

DispersionFit dispersion_constant_fit(double alpha, const std::vector<long>& N_list, const std::vector<double>& t_list) {
  if (!(alpha > 2.0 / 3.0 && alpha < 1.0)) throw std::invalid_argument("dispersion_constant_fit: alpha must lie in (2/3, 1)");
  if (N_list.empty() || t_list.empty()) throw std::invalid_argument("dispersion_constant_fit: empty N or t list");
  for (double t : t_list) {
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("dispersion_constant_fit: t must lie in (0, 1]");
  }
  DispersionFit fit;
  fit.N = N_list;
  for (long N : N_list) {
    if (!is_dyadic(N) || N < 2) throw std::invalid_argument("dispersion_constant_fit: N must be a power of two >= 2");
    const int grid = transform_size(static_cast<int>(16 * N));
    const double t_min = 4.0 / std::pow(static_cast<double>(N), alpha);
    const double scale = std::pow(static_cast<double>(N), 1.0 - 0.5 * alpha);
    double cN = 0.0;
    for (double t : t_list) {
      DispersionSample s;
      s.N = N;
      s.t = t;
      s.sup = kernel_sup(N, t, alpha, grid);
      s.ratio = s.sup * std::sqrt(t) / scale;
      s.fitted = t >= t_min;
      if (s.fitted) cN = std::max(cN, s.ratio);
      fit.samples.push_back(s);
    }
    fit.C_per_N.push_back(cN);
    fit.C = std::max(fit.C, cN);
  }
  const auto [mn, mx] = std::minmax_element(fit.C_per_N.begin(), fit.C_per_N.end());
  fit.variation = *mn > 0.0 ? *mx / *mn : std::numeric_limits<double>::infinity();
  return fit;
}

InequalityVerdict strichartz_l4linf(const TorusField& u, long N, double alpha, int t_quad, int x_grid) {
  check_alpha(alpha);
  if (!is_dyadic(N)) throw std::invalid_argument("strichartz_l4linf: N must be a power of two");
  if (x_grid < 8 * N) throw std::invalid_argument("strichartz_l4linf: x_grid must be >= 8N");
  if (t_quad < 2.0 * std::pow(2.0 * N, alpha)) throw std::invalid_argument("strichartz_l4linf: t_quad must be >= 2 (2N)^alpha");
  const TorusField block = lp_block(u, N);
  const double lhs = l4_linf(t_quad, [&](double t) {
    return to_grid(apply_multiplier(block, [&](int k) { return std::polar(1.0, -omega(k, alpha) * t); }), x_grid);
  });
  return make_verdict(lhs, l2_norm(u) * std::pow(static_cast<double>(N), 0.5 - 0.25 * alpha));
}

InequalityVerdict strichartz_global(const TorusField& u, double alpha, double gamma, int t_quad, int x_grid) {
  check_alpha(alpha);
  if (!(gamma > 0.5 - 0.25 * alpha)) throw std::invalid_argument("strichartz_global: need gamma > 1/2 - alpha/4");
  const int K = u.max_mode();
  if (x_grid < 8 * K) throw std::invalid_argument("strichartz_global: x_grid must be >= 8K");
  if (t_quad < 2.0 * std::pow(static_cast<double>(K), alpha)) {
    throw std::invalid_argument("strichartz_global: t_quad must be >= 2 K^alpha");
  }
  const double lhs = l4_linf(t_quad, [&](double t) {
    return to_grid(apply_multiplier(u, [&](int k) { return std::polar(1.0, -omega(k, alpha) * t); }), x_grid);
  });
  return make_verdict(lhs, sobolev_norm(u, gamma));
}

EnsembleSummary strichartz_ensemble(double alpha, long N, int members, std::uint64_t seed) {
  if (members < 1) throw std::invalid_argument("strichartz_ensemble: members must be >= 1");
  const int K = static_cast<int>(2 * N);
  const int x_grid = transform_size(static_cast<int>(8 * N));
  const int t_quad = static_cast<int>(std::ceil(2.0 * std::pow(2.0 * N, alpha)));
  RandomFieldSpec spec;
  spec.sigma = 0.0;
  EnsembleSummary out;
  double sum = 0.0;
  for (int m = 0; m < members; ++m) {
    const double r = strichartz_l4linf(random_field(K, spec, seed, static_cast<std::uint32_t>(m)), N, alpha, t_quad, x_grid).ratio;
    out.max_ratio = std::max(out.max_ratio, r);
    sum += r;
  }
  out.members = members;
  out.mean_ratio = sum / members;
  return out;
}

std::vector<double> taper_window(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 3) return w;
  for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(std::sin(kPi * static_cast<double>(i) / static_cast<double>(n - 1)), 4);
  return w;
}

double bourgain_norm(const std::vector<double>& times, const std::vector<TorusField>& samples, double s, double b,
                     double alpha, std::vector<double> window, int pad) {
  check_alpha(alpha);
  const std::size_t n = times.size();
  if (n < 2 || samples.size() != n) throw std::invalid_argument("bourgain_norm: need >= 2 samples with matching times");
  if (pad < 1) throw std::invalid_argument("bourgain_norm: pad must be >= 1");
  const double dt = times[1] - times[0];
  if (!(dt > 0.0)) throw std::invalid_argument("bourgain_norm: times must increase");
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * dt) throw std::invalid_argument("bourgain_norm: non-uniform time grid");
  }
  if (window.empty()) window = taper_window(n);
  if (window.size() != n) throw std::invalid_argument("bourgain_norm: window size must match the samples");
  const int K = samples.front().max_mode();
  for (const auto& f : samples) {
    if (f.max_mode() != K) throw std::invalid_argument("bourgain_norm: samples need a common max_mode");
  }
  if (omega(K, alpha) >= kPi / dt) {
    throw std::invalid_argument("bourgain_norm: time step too coarse for the highest frequency |K|^alpha");
  }
  const long L = static_cast<long>(n) * pad;
  const double dtau = 2.0 * kPi / (static_cast<double>(L) * dt);
  std::vector<Complex> buf(static_cast<std::size_t>(L));
  double acc = 0.0;
  for (int k = -K; k <= K; ++k) {
    std::fill(buf.begin(), buf.end(), Complex{});
    for (std::size_t i = 0; i < n; ++i) buf[i] = window[i] * samples[i].coeff(k);
    detail::dft(buf, -1);
    const double ws = std::pow(1.0 + static_cast<double>(k) * k, s);
    const double wk = omega(k, alpha);
    for (long m = 0; m < L; ++m) {
      const long mm = m < (L + 1) / 2 ? m : m - L;
      const double tau = mm * dtau;
      const double wt = b == 0.0 ? 1.0 : std::pow(1.0 + (tau + wk) * (tau + wk), b);
      acc += ws * wt * std::norm(buf[static_cast<std::size_t>(m)] * dt);
    }
  }
  return std::sqrt(acc * dtau / (2.0 * kPi));
}

}  // namespace fracwave
