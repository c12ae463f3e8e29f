#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fracwave/dynamics.hpp"
#include "fracwave/torus_field.hpp"

namespace fracwave {

inline constexpr std::string_view kVersion = "0.1.0";

/// Thrown for malformed configuration text or values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InitialData {
  enum class Kind { Random, Coeffs };
  Kind kind = Kind::Random;
  double sigma = 3.0;
  double amplitude = 1.0;
  std::vector<std::pair<int, Complex>> coeffs;   ///< u (or u1 for pairs)
  std::vector<std::pair<int, Complex>> coeffs2;  ///< u2 for pairs
};

struct EnergyRequest {
  double alpha = 2.0;
  int n = 0;
};

/// Flat `key = value` configuration; `#` starts a comment.
///
///   variant       fnls | halfwave | szego | pair
///   alpha         dispersion exponent (fnls only)
///   K, dt, T, sample_every
///   init          random | coeffs
///   init_sigma, init_amplitude
///   init_coeffs   k:re:im, k:re:im, ...      (init_coeffs2 for the second pair component)
///   norms         s values, comma separated
///   energies      alpha:n pairs, comma separated
///   output, seed
struct ExperimentConfig {
  std::string variant = "fnls";
  double alpha = 2.0;
  int K = 32;
  double dt = 1e-3;
  double T = 1.0;
  int sample_every = 10;
  InitialData init;
  std::vector<double> norms{0.0, 1.0};
  std::vector<EnergyRequest> energies;
  std::string output;
  std::uint64_t seed = 0;

  EvolutionSpec spec() const;
  bool is_pair() const { return variant == "pair"; }
  void validate() const;  ///< throws ConfigError
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
/// Canonical `key = value` lines; parse_config(config_text(c)) reproduces c.
std::string config_text(const ExperimentConfig& c);

/// Shortest decimal string that round-trips to the same binary64.
std::string format_double(double x);
double parse_double(std::string_view s);  ///< strict; throws ConfigError

/// Initial field(s) described by the config. Random Szego data is generated
/// in the range of Pi_+; pair components use tags 0 and 1.
TorusField initial_field(const ExperimentConfig& c);
PairField initial_pair(const ExperimentConfig& c);

/// Column header for the run: t, H^s..., Linf, Q, M, H, E_a_n... (scalar) or
/// t, H^s_u1..., H^s_u2..., Linf_u1, Linf_u2, Q, M, H, Qtilde, Htilde, E_a_n_u1...
std::vector<std::string> experiment_columns(const ExperimentConfig& c);

/// Runs the configured evolution; blow-ups truncate the record.
TrajectoryRecord run_experiment(const ExperimentConfig& c);

/// CSV text: `#` metadata preamble (version, seed, config echo, note on the
/// initial data), header, rows, and a `# truncated` marker after a blow-up.
std::string trajectory_csv(const TrajectoryRecord& rec, const ExperimentConfig& c);
void write_text(const std::filesystem::path& path, std::string_view text);

/// Reads a CSV written by trajectory_csv (comment lines are skipped).
TrajectoryRecord parse_csv(std::string_view text);
TrajectoryRecord read_csv(const std::filesystem::path& path);

enum class GrowthModel { Power, ExpT, ExpT2 };
GrowthModel parse_growth_model(std::string_view name);
std::string_view growth_model_name(GrowthModel m);

struct GrowthFit {
  GrowthModel model = GrowthModel::Power;
  double exponent = 0.0;   ///< slope of log y against log(1+t), t or t^2
  double intercept = 0.0;
  double residual = 0.0;   ///< RMS residual of the log fit
  std::size_t samples = 0;
};

/// Least-squares fit of log(column) against the model's time variable.
/// Needs >= 100 rows or a t span of >= 2 decades.
GrowthFit fit_growth(const TrajectoryRecord& rec, std::string_view column, GrowthModel model);
/// Same, for the column "H^s".
GrowthFit fit_growth(const TrajectoryRecord& rec, double s, GrowthModel model);

/// Polynomial growth exponent of the H^{a+n} norm given by the energy method:
/// (2n+a)/(a-1) for a in (1, 2), and for a in (2/3, 1)
/// 2n(23a-2)/((2a-1)(3a-2)) + 10a/(3a-2). Throws outside these ranges.
double polynomial_growth_exponent(double alpha, int n);

/// "a:step:b" (inclusive, values rounded to 1e-9) or a comma list.
std::vector<double> parse_alpha_grid(std::string_view text);
/// "a..b" (half open) or a comma list.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

struct SweepCell {
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::filesystem::path output;
  bool truncated = false;
  std::string error;
};

/// File name of one sweep cell, e.g. sweep_a0.7_s3.csv.
std::string sweep_file_name(double alpha, std::uint64_t seed);

/// Runs base with every (alpha, seed) pair, writing one CSV per cell into
/// out_dir. Cells are independent; threads only changes the schedule.
std::vector<SweepCell> run_sweep(const ExperimentConfig& base, const std::vector<double>& alphas,
                                 const std::vector<std::uint64_t>& seeds, const std::filesystem::path& out_dir,
                                 int threads);

}  // namespace fracwave
