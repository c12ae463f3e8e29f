#include "fracwave/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "fracwave/spectral.hpp"

namespace fracwave {
namespace {

constexpr Complex kI{0.0, 1.0};

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("alpha must lie in (0, 2]");
}

bool finite_and_bounded(const TorusField& u) {
  double acc = 0.0;
  for (const auto& c : u.coeffs()) acc += std::norm(c);
  return std::isfinite(acc) && acc < 1e200;
}

std::vector<Complex> phase_table(int K, double alpha, double t) {
  std::vector<Complex> table(static_cast<std::size_t>(2 * K + 1));
  for (int k = -K; k <= K; ++k) {
    const double omega = std::pow(std::abs(static_cast<double>(k)), alpha);
    table[static_cast<std::size_t>(k + K)] = std::polar(1.0, -omega * t);
  }
  return table;
}

TorusField multiply(const TorusField& u, const std::vector<Complex>& table) {
  const int K = u.max_mode();
  return apply_multiplier(u, [&](int k) { return table[static_cast<std::size_t>(k + K)]; });
}

// Fixed-size stepping schedule shared by both evolve overloads.
struct Schedule {
  long steps;
  double h;
  double sign;
};

Schedule make_schedule(double T, double dt, int sample_every) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("evolve: dt must be positive");
  if (T == 0.0 || !std::isfinite(T)) throw std::invalid_argument("evolve: T must be finite and nonzero");
  if (sample_every < 1) throw std::invalid_argument("evolve: sample_every must be >= 1");
  const double span = std::abs(T);
  const long steps = std::max(1L, static_cast<long>(std::ceil(span / dt - 1e-9)));
  return {steps, span / static_cast<double>(steps), T < 0 ? -1.0 : 1.0};
}

std::string failure_message(double t) {
  std::ostringstream os;
  os << "solution left the finite range after t = " << t;
  return os.str();
}

template <class State, class Step, class Observer, class Check, class Reflect>
State march(State u, const Schedule& sched, int sample_every, Step&& step, const Observer& observe, Check&& ok,
            Reflect&& reflect) {
  auto emit = [&](long n) {
    if (observe) observe(sched.sign * static_cast<double>(n) * sched.h, sched.sign < 0 ? reflect(u) : u);
  };
  emit(0);
  for (long n = 1; n <= sched.steps; ++n) {
    step(u);
    if (!ok(u)) {
      throw NumericalFailure(failure_message(sched.sign * static_cast<double>(n - 1) * sched.h),
                             sched.sign * static_cast<double>(n - 1) * sched.h);
    }
    if (n % sample_every == 0 || n == sched.steps) emit(n);
  }
  return u;
}

template <class F>
TorusField rk4(const TorusField& u, double h, F&& f) {
  const TorusField k1 = f(u);
  const TorusField k2 = f(u + (0.5 * h) * k1);
  const TorusField k3 = f(u + (0.5 * h) * k2);
  const TorusField k4 = f(u + h * k3);
  return u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Nonlinear part of the quadratic pair, Galerkin-truncated to K.
std::pair<TorusField, TorusField> pair_nonlinearity(const TorusField& u1, const TorusField& u2) {
  const int K = u1.max_mode();
  TorusField n1 = product(u2, u1.conj()).resized(K);
  TorusField n2 = (0.5 * product(u1, u1)).resized(K);
  return {(-kI) * n1, (-kI) * n2};
}

}  // namespace

EvolutionSpec EvolutionSpec::fractional_nls(double alpha) {
  check_alpha(alpha);
  return {Equation::FractionalNLS, alpha};
}

std::string EvolutionSpec::name() const {
  switch (equation) {
    case Equation::FractionalNLS: return "fnls";
    case Equation::HalfWave: return "halfwave";
    case Equation::Szego: return "szego";
    case Equation::QuadraticPair: return "pair";
  }
  return "unknown";
}

EvolutionSpec parse_evolution_spec(std::string_view variant, double alpha) {
  if (variant == "fnls") return EvolutionSpec::fractional_nls(alpha);
  if (variant == "halfwave") return EvolutionSpec::half_wave();
  if (variant == "szego") return EvolutionSpec::szego();
  if (variant == "pair") return EvolutionSpec::quadratic_pair();
  throw std::invalid_argument("unknown variant '" + std::string(variant) + "' (expected fnls, halfwave, szego, pair)");
}

PairField::PairField(TorusField first, TorusField second) : u1(std::move(first)), u2(std::move(second)) {
  if (u1.max_mode() != u2.max_mode()) throw std::invalid_argument("PairField: components need equal max_mode");
}

ConservedReport conserved_quantities(const TorusField& u, double alpha) {
  const int K = u.max_mode();
  double mass = 0.0;
  double momentum = 0.0;
  double dispersive = 0.0;
  for (int k = -K; k <= K; ++k) {
    const double a = std::norm(u.coeff(k));
    mass += a;
    momentum += static_cast<double>(k) * a;
    dispersive += std::pow(std::abs(static_cast<double>(k)), alpha) * a;
  }
  const TorusField rho = pointwise_modulus_squared(u);
  double quartic = 0.0;
  for (const auto& c : rho.coeffs()) quartic += std::norm(c);
  return {0.5 * mass, momentum, 0.5 * dispersive + 0.25 * quartic, std::nullopt, std::nullopt};
}

ConservedReport pair_conserved(const PairField& p) {
  const int K = p.max_mode();
  double m1 = 0.0, m2 = 0.0, p1 = 0.0, p2 = 0.0, d1 = 0.0, d2 = 0.0;
  for (int k = -K; k <= K; ++k) {
    const double a = std::norm(p.u1.coeff(k));
    const double b = std::norm(p.u2.coeff(k));
    m1 += a;
    m2 += b;
    p1 += k * a;
    p2 += k * b;
    d1 += std::abs(k) * a;
    d2 += std::abs(k) * b;
  }
  const TorusField sq = product(p.u1, p.u1);
  const double coupling = inner(sq, p.u2).real();
  const double qt = m1 + 2.0 * m2;
  const double ht = 0.5 * (d1 + d2 + coupling);
  return {0.5 * qt, p1 + p2, ht, qt, ht};
}

TorusField linear_propagate(const TorusField& u, double t, double alpha) {
  return multiply(u, phase_table(u.max_mode(), alpha, t));
}

TorusField nonlinear_phase_step(const TorusField& u, double tau, int grid_size) {
  const int K = u.max_mode();
  if (grid_size < 4 * K + 2) throw std::invalid_argument("nonlinear_phase_step: grid_size must be >= 4K+2");
  auto values = to_grid(u, grid_size);
  for (auto& v : values) v *= std::polar(1.0, -std::norm(v) * tau);
  return from_grid(values, K);
}

TorusField equation_rhs(const TorusField& u, const EvolutionSpec& spec) {
  switch (spec.equation) {
    case Equation::FractionalNLS:
    case Equation::HalfWave:
      return (-kI) * (fractional_derivative(u, spec.hamiltonian_exponent()) + cubic_term(u));
    case Equation::Szego:
      return (-kI) * szego_project(cubic_term(u));
    case Equation::QuadraticPair:
      break;
  }
  throw std::invalid_argument("equation_rhs: the quadratic pair acts on PairField");
}

TorusField evolve(const TorusField& u0, const EvolutionSpec& spec, double T, double dt, int sample_every,
                  const FieldObserver& observe) {
  if (spec.is_pair()) throw std::invalid_argument("evolve: the quadratic pair needs a PairField");
  const Schedule sched = make_schedule(T, dt, sample_every);
  const int K = u0.max_mode();
  const double h = sched.h;
  auto reflect = [](const TorusField& v) { return v.conj_coeffs(); };
  const TorusField start = sched.sign < 0 ? u0.conj_coeffs() : u0;

  if (spec.equation == Equation::Szego) {
    const double sup = lp_norm(u0, kInfinity, transform_size(4 * K + 2));
    if (sup > 0.0 && h > 0.5 / (sup * sup)) {
      throw std::invalid_argument("evolve: Szego step exceeds 0.5/||u0||_inf^2");
    }
    auto f = [](const TorusField& v) { return (-kI) * szego_project(cubic_term(v)); };
    auto step = [&](TorusField& v) { v = rk4(v, h, f); };
    TorusField out = march(start, sched, sample_every, step, observe, finite_and_bounded, reflect);
    return sched.sign < 0 ? out.conj_coeffs() : out;
  }

  check_alpha(spec.hamiltonian_exponent());
  const auto half = phase_table(K, spec.hamiltonian_exponent(), 0.5 * h);
  const int grid = transform_size(4 * K + 2);
  auto step = [&](TorusField& v) {
    v = multiply(v, half);
    v = nonlinear_phase_step(v, h, grid);
    v = multiply(v, half);
  };
  TorusField out = march(start, sched, sample_every, step, observe, finite_and_bounded, reflect);
  return sched.sign < 0 ? out.conj_coeffs() : out;
}

PairField evolve(const PairField& p0, const EvolutionSpec& spec, double T, double dt, int sample_every,
                 const PairObserver& observe) {
  if (!spec.is_pair()) throw std::invalid_argument("evolve: PairField requires the quadratic pair");
  const Schedule sched = make_schedule(T, dt, sample_every);
  const int K = p0.max_mode();
  const double h = sched.h;
  const auto half = phase_table(K, 1.0, 0.5 * h);
  auto reflect = [](const PairField& p) { return PairField(p.u1.conj_coeffs(), p.u2.conj_coeffs()); };

  auto step = [&](PairField& p) {
    TorusField a = multiply(p.u1, half);
    TorusField b = multiply(p.u2, half);
    const auto [k1a, k1b] = pair_nonlinearity(a, b);
    const auto [k2a, k2b] = pair_nonlinearity(a + (0.5 * h) * k1a, b + (0.5 * h) * k1b);
    const auto [k3a, k3b] = pair_nonlinearity(a + (0.5 * h) * k2a, b + (0.5 * h) * k2b);
    const auto [k4a, k4b] = pair_nonlinearity(a + h * k3a, b + h * k3b);
    a += (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    b += (h / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
    p = PairField(multiply(a, half), multiply(b, half));
  };
  auto ok = [](const PairField& p) { return finite_and_bounded(p.u1) && finite_and_bounded(p.u2); };
  PairField start = sched.sign < 0 ? reflect(p0) : p0;
  PairField out = march(std::move(start), sched, sample_every, step, observe, ok, reflect);
  return sched.sign < 0 ? reflect(out) : out;
}

std::size_t TrajectoryRecord::column_index(std::string_view name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("TrajectoryRecord: no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> TrajectoryRecord::column(std::string_view name) const {
  const std::size_t j = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[j]);
  return out;
}

namespace {

void sort_by_time(TrajectoryRecord& rec) {
  if (rec.rows.size() < 2 || rec.rows.front()[0] <= rec.rows.back()[0]) return;
  std::reverse(rec.rows.begin(), rec.rows.end());
  std::reverse(rec.states.begin(), rec.states.end());
}

}  // namespace

TrajectoryRecord record_trajectory(const TorusField& u0, const EvolutionSpec& spec, double T, double dt,
                                   int sample_every, bool keep_states) {
  TrajectoryRecord rec;
  rec.columns = {"t", "Q", "M", "H", "Linf"};
  const int grid = transform_size(4 * u0.max_mode() + 2);
  const double alpha = spec.hamiltonian_exponent();
  auto observe = [&](double t, const TorusField& u) {
    const auto c = conserved_quantities(u, alpha);
    rec.rows.push_back({t, c.Q, c.M, c.H, lp_norm(u, kInfinity, grid)});
    if (keep_states) rec.states.push_back(u);
    rec.last_valid_time = t;
  };
  try {
    evolve(u0, spec, T, dt, sample_every, observe);
  } catch (const NumericalFailure& e) {
    rec.truncated = true;
    rec.failure = e.what();
    rec.last_valid_time = e.last_valid_time();
  }
  sort_by_time(rec);
  return rec;
}

TrajectoryRecord record_trajectory(const PairField& p0, const EvolutionSpec& spec, double T, double dt,
                                   int sample_every) {
  TrajectoryRecord rec;
  rec.columns = {"t", "Qtilde", "Htilde", "M", "Linf_u1", "Linf_u2"};
  const int grid = transform_size(4 * p0.max_mode() + 2);
  auto observe = [&](double t, const PairField& p) {
    const auto c = pair_conserved(p);
    rec.rows.push_back({t, *c.Qtilde, *c.Htilde, c.M, lp_norm(p.u1, kInfinity, grid), lp_norm(p.u2, kInfinity, grid)});
    rec.last_valid_time = t;
  };
  try {
    evolve(p0, spec, T, dt, sample_every, observe);
  } catch (const NumericalFailure& e) {
    rec.truncated = true;
    rec.failure = e.what();
    rec.last_valid_time = e.last_valid_time();
  }
  sort_by_time(rec);
  return rec;
}

namespace {

// W[i][j] = int_0^{s_i} l_j(s) ds for the Lagrange basis on the nodes
// s_j = T (1 - cos(pi j / n)) / 2, j = 0..n.
std::vector<std::vector<double>> chebyshev_integration_matrix(int n, double T) {
  const double pi = std::numbers::pi;
  std::vector<std::vector<double>> W(static_cast<std::size_t>(n + 1), std::vector<double>(static_cast<std::size_t>(n + 1)));
  // Antiderivative G_k of T_k evaluated at x = cos(theta).
  auto G = [&](int k, double theta) {
    if (k == 0) return std::cos(theta);
    if (k == 1) return std::cos(2.0 * theta) / 4.0;
    return std::cos((k + 1) * theta) / (2.0 * (k + 1)) - std::cos((k - 1) * theta) / (2.0 * (k - 1));
  };
  for (int j = 0; j <= n; ++j) {
    std::vector<double> a(static_cast<std::size_t>(n + 1));
    const double cj = (j == 0 || j == n) ? 0.5 : 1.0;
    for (int k = 0; k <= n; ++k) {
      a[static_cast<std::size_t>(k)] = (2.0 / n) * cj * std::cos(pi * k * j / n);
    }
    a[0] *= 0.5;
    a[static_cast<std::size_t>(n)] *= 0.5;
    for (int i = 0; i <= n; ++i) {
      const double theta_i = pi * i / n;
      double acc = 0.0;
      for (int k = 0; k <= n; ++k) acc += a[static_cast<std::size_t>(k)] * (G(k, 0.0) - G(k, theta_i));
      W[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0.5 * T * acc;
    }
  }
  return W;
}

}  // namespace

TorusField picard_iterate(const TorusField& u0, double alpha, double T, int n_quad, int max_iter, double tol) {
  check_alpha(alpha);
  if (n_quad < 2) throw std::invalid_argument("picard_iterate: n_quad must be >= 2");
  if (max_iter < 1) throw std::invalid_argument("picard_iterate: max_iter must be >= 1");
  if (T == 0.0) return u0;
  const int n = n_quad - 1;
  const auto W = chebyshev_integration_matrix(n, T);
  std::vector<double> s(static_cast<std::size_t>(n + 1));
  for (int j = 0; j <= n; ++j) s[static_cast<std::size_t>(j)] = 0.5 * T * (1.0 - std::cos(std::numbers::pi * j / n));

  std::vector<TorusField> v(static_cast<std::size_t>(n + 1), u0);
  std::vector<double> history;
  const double scale = std::max(1.0, l2_norm(u0));
  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<TorusField> g;
    g.reserve(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
      const TorusField u = linear_propagate(v[j], s[j], alpha);
      g.push_back(linear_propagate(cubic_term(u), -s[j], alpha));
    }
    double residual = 0.0;
    std::vector<TorusField> next;
    next.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      TorusField acc = TorusField::zero(u0.max_mode());
      for (std::size_t j = 0; j < v.size(); ++j) acc += W[i][j] * g[j];
      next.push_back(u0 - kI * acc);
      residual = std::max(residual, l2_norm(next.back() - v[i]));
    }
    v = std::move(next);
    history.push_back(residual);
    if (!std::isfinite(residual)) throw PicardDivergence("picard_iterate: residual is not finite", history);
    if (residual <= tol * scale) return linear_propagate(v.back(), T, alpha);
    if (history.size() >= 3 && residual > history[history.size() - 2]) {
      throw PicardDivergence("picard_iterate: residual grew; the Duhamel map is not contracting on this interval",
                             history);
    }
  }
  throw PicardDivergence("picard_iterate: no convergence within max_iter", history);
}

}  // namespace fracwave
