#include <algorithm>
#include <cmath>

#include "fracwave/energies.hpp"
#include "fracwave/experiment.hpp"
#include "fracwave/rng.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave {
namespace {

TorusField from_list(int K, const std::vector<std::pair<int, Complex>>& list) {
  TorusField u(K);
  for (const auto& [k, c] : list) u += TorusField::mode(K, k, c);
  return u;
}

TorusField random_member(const ExperimentConfig& c, std::uint32_t tag) {
  RandomFieldSpec spec;
  spec.sigma = c.init.sigma;
  spec.amplitude = c.init.amplitude;
  spec.nonnegative_only = c.variant == "szego";
  return random_field(c.K, spec, c.seed, 0, tag);
}

std::string energy_column(const EnergyRequest& e) {
  return "E_" + format_double(e.alpha) + "_" + std::to_string(e.n);
}

}  // namespace

TorusField initial_field(const ExperimentConfig& c) {
  if (c.init.kind == InitialData::Kind::Coeffs) return from_list(c.K, c.init.coeffs);
  return random_member(c, 0);
}

PairField initial_pair(const ExperimentConfig& c) {
  if (c.init.kind == InitialData::Kind::Coeffs) return {from_list(c.K, c.init.coeffs), from_list(c.K, c.init.coeffs2)};
  return {random_member(c, 0), random_member(c, 1)};
}

std::vector<std::string> experiment_columns(const ExperimentConfig& c) {
  std::vector<std::string> cols{"t"};
  if (c.is_pair()) {
    for (const char* which : {"_u1", "_u2"}) {
      for (double s : c.norms) cols.push_back("H^" + format_double(s) + which);
    }
    cols.insert(cols.end(), {"Linf_u1", "Linf_u2", "Q", "M", "H", "Qtilde", "Htilde"});
    for (const auto& e : c.energies) cols.push_back(energy_column(e) + "_u1");
  } else {
    for (double s : c.norms) cols.push_back("H^" + format_double(s));
    cols.insert(cols.end(), {"Linf", "Q", "M", "H"});
    for (const auto& e : c.energies) cols.push_back(energy_column(e));
  }
  return cols;
}

TrajectoryRecord run_experiment(const ExperimentConfig& c) {
  c.validate();
  const EvolutionSpec spec = c.spec();
  TrajectoryRecord rec;
  rec.columns = experiment_columns(c);
  const int grid = transform_size(4 * c.K + 2);

  auto energies_of = [&](const TorusField& u, std::vector<double>& row) {
    for (const auto& e : c.energies) row.push_back(modified_energy(u, e.alpha, e.n).E);
  };
  try {
    if (c.is_pair()) {
      evolve(initial_pair(c), spec, c.T, c.dt, c.sample_every, [&](double t, const PairField& p) {
        std::vector<double> row{t};
        for (const auto* u : {&p.u1, &p.u2}) {
          for (double s : c.norms) row.push_back(sobolev_norm(*u, s));
        }
        row.push_back(lp_norm(p.u1, kInfinity, grid));
        row.push_back(lp_norm(p.u2, kInfinity, grid));
        const auto q = pair_conserved(p);
        row.insert(row.end(), {q.Q, q.M, q.H, *q.Qtilde, *q.Htilde});
        energies_of(p.u1, row);
        rec.rows.push_back(std::move(row));
        rec.last_valid_time = t;
      });
    } else {
      evolve(initial_field(c), spec, c.T, c.dt, c.sample_every, [&](double t, const TorusField& u) {
        std::vector<double> row{t};
        for (double s : c.norms) row.push_back(sobolev_norm(u, s));
        row.push_back(lp_norm(u, kInfinity, grid));
        const auto q = conserved_quantities(u, spec.hamiltonian_exponent());
        row.insert(row.end(), {q.Q, q.M, q.H});
        energies_of(u, row);
        rec.rows.push_back(std::move(row));
        rec.last_valid_time = t;
      });
    }
  } catch (const NumericalFailure& e) {
    rec.truncated = true;
    rec.failure = e.what();
    rec.last_valid_time = e.last_valid_time();
  }
  if (rec.rows.size() > 1 && rec.rows.front()[0] > rec.rows.back()[0]) std::reverse(rec.rows.begin(), rec.rows.end());
  return rec;
}

double polynomial_growth_exponent(double alpha, int n) {
  if (n < 0) throw std::invalid_argument("polynomial_growth_exponent: n must be >= 0");
  if (alpha > 1.0 && alpha < 2.0) return (2.0 * n + alpha) / (alpha - 1.0);
  if (alpha > 2.0 / 3.0 && alpha < 1.0) {
    return 2.0 * n * (23.0 * alpha - 2.0) / ((2.0 * alpha - 1.0) * (3.0 * alpha - 2.0)) + 10.0 * alpha / (3.0 * alpha - 2.0);
  }
  throw std::invalid_argument("polynomial_growth_exponent: alpha must lie in (2/3, 1) or (1, 2)");
}

}  // namespace fracwave
