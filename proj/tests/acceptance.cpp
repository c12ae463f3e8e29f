// Acceptance gate: one PASS/FAIL line per criterion, detail lines indented.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fracwave/dispersion.hpp"
#include "fracwave/dynamics.hpp"
#include "fracwave/energies.hpp"
#include "fracwave/experiment.hpp"
#include "fracwave/inequality.hpp"
#include "fracwave/rng.hpp"
#include "fracwave/spectral.hpp"
#include "oracles.hpp"

using namespace fracwave;
namespace fs = std::filesystem;

namespace tol {
// Conservation at K = 128, dt = 1e-3, T = 10.
constexpr double kMassDrift = 1e-7;
constexpr double kHamiltonianDrift = 1e-6;
constexpr double kRefinement = 3.5;
// Drifts below this are rounding noise and carry no time-step signal.
constexpr double kRoundoffFloor = 1e-11;
constexpr double kRunSeconds = 60.0;
constexpr double kPicard = 1e-7;
constexpr double kPlaneWave = 1e-10;
constexpr double kH2Band = 10.0;
constexpr double kPhiSup = 1e-6;
constexpr double kPhiIdentity = 1e-10;
constexpr double kOracle = 1e-12;
constexpr double kEnsembleStability = 0.2;
constexpr double kHankelConstant = 1.0 + 1e-12;
constexpr double kDispersionVariation = 2.0;
constexpr double kDispersionSeconds = 120.0;
constexpr double kStrichartzLo = 0.5, kStrichartzHi = 2.0;
constexpr double kEnergyRatioLo = 3.5, kEnergyRatioHi = 4.5;
constexpr double kCancellation = 1e-12;
constexpr double kStiffness = 0.25;
}  // namespace tol

namespace {

int failures = 0;

void detail(const char* fmt, auto... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
}

void verdict(bool ok, const std::string& name, const std::string& summary) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), summary.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel_drift(const std::vector<double>& v, double scale) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x - v.front()));
  return m / scale;
}

// Same seeding as a random-data pair run from the CLI: one stream per component.
PairField reference_pair(int K) {
  RandomFieldSpec s;
  s.sigma = 3.0;
  return {random_field(K, s, 0, 0, 0), random_field(K, s, 0, 0, 1)};
}

double momentum_scale(const TorusField& u) {
  double s = 0.0;
  for (int k = -u.max_mode(); k <= u.max_mode(); ++k) s += std::abs(k) * std::norm(u[k]);
  return s;
}

// ---------------------------------------------------------------------------

void conservation() {
  constexpr int K = 128;
  constexpr double T = 10.0, dt = 1e-3, sample_dt = 1e-2;
  bool ok = true;
  double worst_time = 0.0;
  struct Case {
    std::string name;
    EvolutionSpec spec;
  };
  const std::vector<Case> cases{{"fnls a=0.8", EvolutionSpec::fractional_nls(0.8)},
                                {"fnls a=1.5", EvolutionSpec::fractional_nls(1.5)},
                                {"fnls a=2", EvolutionSpec::fractional_nls(2.0)},
                                {"halfwave", EvolutionSpec::half_wave()},
                                {"szego", EvolutionSpec::szego()},
                                {"pair", EvolutionSpec::quadratic_pair()}};

  auto refined_ok = [](double coarse, double fine) {
    return coarse < tol::kRoundoffFloor || coarse / fine >= tol::kRefinement;
  };

  for (const auto& c : cases) {
    // Drifts are compared at common sample times t = 0, 0.01, ..., 10.
    auto run = [&](double h, double& secs) {
      const int every = static_cast<int>(std::lround(sample_dt / h));
      TrajectoryRecord rec;
      if (c.spec.is_pair()) {
        const PairField p0 = reference_pair(K);
        secs = seconds([&] { rec = record_trajectory(p0, c.spec, T, h, every); });
      } else {
        RandomFieldSpec rs;
        rs.nonnegative_only = c.spec.equation == Equation::Szego;
        const auto u0 = random_field(K, rs, 0);
        secs = seconds([&] { rec = record_trajectory(u0, c.spec, T, h, every); });
      }
      return rec;
    };
    double s1 = 0.0, s2 = 0.0;
    const auto a = run(dt, s1);
    const auto b = run(dt / 2, s2);
    worst_time = std::max({worst_time, s1, s2});
    if (a.truncated || b.truncated) {
      ok = false;
      detail("%s: run truncated (%s)", c.name.c_str(), a.failure.c_str());
      continue;
    }
    std::vector<std::pair<std::string, double>> mass_like, energy_like, mass_like_fine, energy_like_fine;
    if (c.spec.is_pair()) {
      const PairField p0 = reference_pair(K);
      const double mscale = momentum_scale(p0.u1) + momentum_scale(p0.u2);
      for (const auto* r : {&a, &b}) {
        auto& ml = r == &a ? mass_like : mass_like_fine;
        auto& el = r == &a ? energy_like : energy_like_fine;
        ml.push_back({"M", rel_drift(r->column("M"), mscale)});
        el.push_back({"Qtilde", rel_drift(r->column("Qtilde"), std::abs(r->column("Qtilde").front()))});
        el.push_back({"Htilde", rel_drift(r->column("Htilde"), std::abs(r->column("Htilde").front()))});
      }
    } else {
      RandomFieldSpec rs;
      rs.nonnegative_only = c.spec.equation == Equation::Szego;
      const double mscale = momentum_scale(random_field(K, rs, 0));
      for (const auto* r : {&a, &b}) {
        auto& ml = r == &a ? mass_like : mass_like_fine;
        auto& el = r == &a ? energy_like : energy_like_fine;
        ml.push_back({"Q", rel_drift(r->column("Q"), std::abs(r->column("Q").front()))});
        ml.push_back({"M", rel_drift(r->column("M"), mscale)});
        el.push_back({"H", rel_drift(r->column("H"), std::abs(r->column("H").front()))});
      }
    }
    std::string line = c.name + ":";
    for (std::size_t i = 0; i < mass_like.size(); ++i) {
      const bool good = mass_like[i].second < tol::kMassDrift && refined_ok(mass_like[i].second, mass_like_fine[i].second);
      ok = ok && good;
      line += fmt(" %s %.2e%s", mass_like[i].first.c_str(), mass_like[i].second, good ? "" : "(!)");
    }
    for (std::size_t i = 0; i < energy_like.size(); ++i) {
      const double r = energy_like[i].second / energy_like_fine[i].second;
      const bool good = energy_like[i].second < tol::kHamiltonianDrift && refined_ok(energy_like[i].second, energy_like_fine[i].second);
      ok = ok && good;
      if (energy_like[i].second < tol::kRoundoffFloor) {
        line += fmt(" %s %.2e (roundoff)%s", energy_like[i].first.c_str(), energy_like[i].second, good ? "" : "(!)");
      } else {
        line += fmt(" %s %.2e (x%.2f on halving)%s", energy_like[i].first.c_str(), energy_like[i].second, r,
                    good ? "" : "(!)");
      }
    }
    line += fmt("; %.1f s / %.1f s", s1, s2);
    detail("%s", line.c_str());
  }
  ok = ok && worst_time < tol::kRunSeconds;
  verdict(ok, "conservation",
          fmt("Q,M < %.0e, H,Htilde,Qtilde < %.0e, >= %.1fx on dt halving, slowest run %.1f s (< %.0f s)",
              tol::kMassDrift, tol::kHamiltonianDrift, tol::kRefinement, worst_time, tol::kRunSeconds));
}

void solver_cross_validation() {
  const auto u0 = random_field(16, 3.0, 1.0, 0);
  bool ok = true;
  double worst = 0.0;
  for (double alpha : {0.8, 1.0, 1.5, 2.0}) {
    const auto a = picard_iterate(u0, alpha, 0.01, 24, 80, 1e-15);
    const auto b = evolve(u0, EvolutionSpec::fractional_nls(alpha), 0.01, 1e-5, 1);
    const double d = sobolev_norm(a - b, alpha / 2);
    detail("alpha %.1f: ||picard - evolve||_{H^{a/2}} = %.2e", alpha, d);
    worst = std::max(worst, d);
    ok = ok && d < tol::kPicard;
  }
  verdict(ok, "solver cross-validation", fmt("max difference %.2e (< %.0e), K = 16, T = 0.01", worst, tol::kPicard));
}

void plane_waves() {
  bool ok = true;
  double worst = 0.0;
  const Complex amp(0.8, -0.3);
  for (double alpha : {0.5, 0.8, 1.0, 1.5, 2.0}) {
    for (int k : {-5, 0, 3}) {
      const auto u0 = TorusField::mode(16, k, amp);
      const auto u = evolve(u0, EvolutionSpec::fractional_nls(alpha), 1.0, 1e-3, 1);
      const double w = std::pow(std::abs(double(k)), alpha) + std::norm(amp);
      const double d = u.max_abs_diff(TorusField::mode(16, k, amp * std::polar(1.0, -w)));
      worst = std::max(worst, d);
      ok = ok && d < tol::kPlaneWave;
    }
  }
  verdict(ok, "plane-wave oracle", fmt("max coefficient error %.2e at T = 1 (< %.0e)", worst, tol::kPlaneWave));
}

void integrable_sanity() {
  const auto u0 = random_field(128, 3.0, 1.0, 0);
  double lo = 1e300, hi = 0.0;
  const double secs = seconds([&] {
    evolve(u0, EvolutionSpec::fractional_nls(2.0), 50.0, 1e-3, 100, [&](double, const TorusField& u) {
      const double h2 = sobolev_norm(u, 2.0);
      lo = std::min(lo, h2);
      hi = std::max(hi, h2);
    });
  });
  verdict(hi / lo < tol::kH2Band, "integrable sanity",
          fmt("alpha = 2, K = 128, T = 50: sup/inf of ||u||_{H^2} = %.3f (< %.0f), %.1f s", hi / lo, tol::kH2Band, secs));
}

void phi_checks() {
  bool ok = true;
  double worst_sup = 0.0, worst_id = 0.0;
  for (double alpha : {1.0, 1.25, 1.5, 1.75, 2.0}) {
    const double s = phi_supremum(alpha);
    const double id = phi_identity_defect(alpha, 512);
    detail("alpha %.2f: sup|phi| = %.12f, identity defect %.2e", alpha, s, id);
    worst_sup = std::max(worst_sup, std::abs(s - 2.0));
    worst_id = std::max(worst_id, id);
  }
  ok = worst_sup < tol::kPhiSup && worst_id < tol::kPhiIdentity;
  verdict(ok, "phi supremum",
          fmt("max |sup - 2| = %.2e (< %.0e), identity defect %.2e (< %.0e) over |k|,|l| <= 512", worst_sup,
              tol::kPhiSup, worst_id, tol::kPhiIdentity));
}

void leibniz() {
  bool ok = true;
  double worst_oracle = 0.0;
  for (int K = 1; K <= 8; ++K) {
    for (double alpha : {0.7, 0.9, 1.0, 1.5, 2.0}) {
      const auto u = oracle::random_field(K, 0.5, 1000 + K);
      const auto b = oracle::leibniz_direct(u, alpha);
      const double d = leibniz_defect(u, alpha).max_abs_diff(b) / std::max(1.0, oracle::max_abs(b));
      worst_oracle = std::max(worst_oracle, d);
    }
  }
  ok = worst_oracle < tol::kOracle;
  detail("double-sum oracle, K <= 8: max relative error %.2e", worst_oracle);

  double worst_shift = 0.0;
  auto stability = [&](double alpha, int n) {
    const double sigma = leibniz_default_sigma(alpha, n);
    const auto a = leibniz_ensemble(alpha, n, 32, 1000, 0, sigma);
    const auto b = leibniz_ensemble(alpha, n, 64, 1000, 0, sigma);
    const double shift = std::abs(b.max_ratio / a.max_ratio - 1.0);
    worst_shift = std::max(worst_shift, shift);
    detail("alpha %.1f n %d: max ratio %.4f (K=32) -> %.4f (K=64), shift %.1f%%", alpha, n, a.max_ratio, b.max_ratio,
           100 * shift);
    return std::isfinite(a.max_ratio) && shift < tol::kEnsembleStability;
  };
  for (double alpha : {1.0, 1.5}) {
    for (int n : {0, 1, 2}) ok = stability(alpha, n) && ok;
  }
  for (double alpha : {0.7, 0.9}) {
    for (int n : {1, 2}) ok = stability(alpha, n) && ok;
  }
  verdict(ok, "Leibniz defect",
          fmt("oracle error %.2e (< %.0e), worst ensemble shift K 32 -> 64 of %.1f%% (< %.0f%%), 1000 fields", worst_oracle,
              tol::kOracle, 100 * worst_shift, 100 * tol::kEnsembleStability));
}

void hankel() {
  double worst_oracle = 0.0;
  for (unsigned seed = 0; seed < 20; ++seed) {
    const auto v = szego_project(oracle::random_field(64, 0.5, 2000 + seed));
    const auto h = szego_project(oracle::random_field(64, 0.5, 3000 + seed));
    const auto a = hankel_apply(v, h);
    const auto b = oracle::hankel_matrix_apply(v, h);
    for (int k = 0; k <= 64; ++k) worst_oracle = std::max(worst_oracle, std::abs(a[k] - b[k]));
  }
  const auto e = hankel_ensemble(64, 1000, 0, 1.0);
  const bool ok = worst_oracle < tol::kOracle && e.max_ratio <= tol::kHankelConstant;
  verdict(ok, "Hankel bound",
          fmt("1000 pairs at K = 64: max proof-weight ratio %.4f (<= 1), matrix oracle error %.2e (< %.0e)", e.max_ratio,
              worst_oracle, tol::kOracle));
}

void counterexample() {
  bool ok = true;
  double prev = 0.0;
  std::string seq;
  for (int N = 1 << 8; N <= 1 << 20; N <<= 2) {
    const double r = log_counterexample(N).ratio;
    seq += fmt("%s%.5f", seq.empty() ? "" : ", ", r);
    ok = ok && r > prev;
    prev = r;
  }
  verdict(ok, "log counterexample", "R(2^8), R(2^10), ..., R(2^20) = " + seq + " (strictly increasing)");
}

void dispersion() {
  const double alpha = 0.8;
  const std::vector<long> Ns{64, 128, 256, 512, 1024};
  std::vector<double> ts;
  const double t_min = 4.0 / std::pow(1024.0, alpha);
  for (int i = 0; i < 300; ++i) ts.push_back(t_min * std::pow(1.0 / t_min, i / 299.0));
  DispersionFit fit;
  const double secs = seconds([&] { fit = dispersion_constant_fit(alpha, Ns, ts); });
  std::string cs;
  for (double c : fit.C_per_N) cs += fmt("%s%.3f", cs.empty() ? "" : ", ", c);
  const bool ok = fit.variation < tol::kDispersionVariation && secs < tol::kDispersionSeconds;
  verdict(ok, "dispersion constant",
          fmt("alpha = 0.8, C_N = [%s], variation %.3f (< %.0f), %.1f s (< %.0f s)", cs.c_str(), fit.variation,
              tol::kDispersionVariation, secs, tol::kDispersionSeconds));
}

void strichartz() {
  bool ok = true;
  double lo = 1e300, hi = 0.0;
  for (double alpha : {0.7, 0.8, 0.9}) {
    double prev = 0.0;
    std::string seq;
    for (long N = 16; N <= 512; N *= 2) {
      const auto e = strichartz_ensemble(alpha, N, 20, 0);
      seq += fmt("%s%.4f", seq.empty() ? "" : ", ", e.max_ratio);
      if (prev > 0.0) {
        const double q = e.max_ratio / prev;
        lo = std::min(lo, q);
        hi = std::max(hi, q);
        ok = ok && q >= tol::kStrichartzLo && q <= tol::kStrichartzHi;
      }
      prev = e.max_ratio;
    }
    detail("alpha %.1f, N = 16..512: max ratios %s", alpha, seq.c_str());
  }
  verdict(ok, "Strichartz stability",
          fmt("consecutive max-ratio quotients under N doubling in [%.3f, %.3f] (within [%.1f, %.0f])", lo, hi,
              tol::kStrichartzLo, tol::kStrichartzHi));
}

void modified_energy_checks() {
  bool ok = true;
  int held = 0, total = 0;
  for (double alpha : {1.0, 1.5, 1.9}) {
    for (int n : {0, 1, 2}) {
      for (std::uint32_t m = 0; m < 50; ++m) {
        RandomFieldSpec s;
        s.sigma = 2.0;
        s.kmin = 4;
        s.kmax = 16;
        const auto p = random_field(32, s, 0, m);
        const double lam = admissible_amplitude(p, alpha, n);
        ++total;
        if (sandwich_check(lam * p, alpha, n)) ++held;
      }
    }
  }
  ok = held == total;
  detail("sandwich at the admissible amplitude: %d / %d members", held, total);

  double worst_cancel = 0.0;
  std::string ratios;
  const auto u0 = random_field(32, 3.0, 1.0, 0);
  for (auto [alpha, n] : {std::pair{1.5, 1}, std::pair{2.0, 0}, std::pair{1.0, 2}}) {
    auto rep = [&](double dt) {
      const auto rec = record_trajectory(u0, EvolutionSpec::fractional_nls(alpha), 0.05, dt, 1, true);
      return energy_derivative_consistency(rec, alpha, n);
    };
    // The dt^2 regime needs the fastest linear phase resolved: K^alpha dt <= 1/4.
    double dt = 1e-3;
    while (std::pow(32.0, alpha) * dt > tol::kStiffness) dt /= 2;
    const auto a = rep(dt);
    const auto b = rep(dt / 2);
    const double r = a.max_mismatch / b.max_mismatch;
    worst_cancel = std::max({worst_cancel, a.max_cancellation_rel, b.max_cancellation_rel});
    ratios += fmt("%s%.3f", ratios.empty() ? "" : ", ", r);
    detail("alpha %.1f n %d, dt %.3g: FD mismatch %.3e -> %.3e (ratio %.3f), max |dE/dt| %.3e", alpha, n, dt,
           a.max_mismatch, b.max_mismatch, r, a.max_rate);
    ok = ok && r >= tol::kEnergyRatioLo && r <= tol::kEnergyRatioHi;
  }
  ok = ok && worst_cancel < tol::kCancellation;
  verdict(ok, "modified energy",
          fmt("sandwich %d/%d, dt-halving ratios [%s] (in [%.1f, %.1f]), cancellation %.1e (< %.0e)", held, total,
              ratios.c_str(), tol::kEnergyRatioLo, tol::kEnergyRatioHi, worst_cancel, tol::kCancellation));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  ExperimentConfig c = parse_config(
      "variant = fnls\nalpha = 1.5\nK = 32\ndt = 1e-3\nT = 1\nsample_every = 10\n"
      "norms = 0, 1, 2.5\nenergies = 1.5:1\nseed = 7\n");
  const std::string a = trajectory_csv(run_experiment(c), c);
  const std::string b = trajectory_csv(run_experiment(c), c);
  bool ok = a == b;
  detail("repeated seeded run: %zu bytes, identical = %s", a.size(), ok ? "yes" : "no");

  const auto root = fs::temp_directory_path() / "fracwave_acceptance_sweep";
  fs::remove_all(root);
  ExperimentConfig base = c;
  base.T = 0.5;
  const std::vector<double> alphas{0.7, 1.0, 1.5, 1.9};
  const std::vector<std::uint64_t> seeds{0, 1, 2};
  const auto serial = run_sweep(base, alphas, seeds, root / "serial", 1);
  const auto parallel = run_sweep(base, alphas, seeds, root / "parallel", 4);
  int same = 0;
  for (std::size_t i = 0; i < serial.size(); ++i) {
    const bool eq = serial[i].error.empty() && parallel[i].error.empty() &&
                    serial[i].output.filename() == parallel[i].output.filename() &&
                    slurp(serial[i].output) == slurp(parallel[i].output);
    if (eq) ++same;
  }
  std::size_t listed = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(root / "parallel")) ++listed;
  ok = ok && same == static_cast<int>(serial.size()) && listed == serial.size();
  fs::remove_all(root);
  verdict(ok, "determinism",
          fmt("repeated run byte-identical; parallel sweep (4 threads) = serial sweep for %d/%zu files", same,
              serial.size()));
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void()>>> criteria{
      {"conservation", conservation},
      {"solver cross-validation", solver_cross_validation},
      {"plane-wave oracle", plane_waves},
      {"integrable sanity", integrable_sanity},
      {"phi supremum", phi_checks},
      {"Leibniz defect", leibniz},
      {"Hankel bound", hankel},
      {"log counterexample", counterexample},
      {"dispersion constant", dispersion},
      {"Strichartz stability", strichartz},
      {"modified energy", modified_energy_checks},
      {"determinism", determinism},
  };
  for (const auto& [name, run] : criteria) {
    try {
      run();
    } catch (const std::exception& e) {
      verdict(false, name, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
