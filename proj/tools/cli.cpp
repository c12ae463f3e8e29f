#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fracwave/dispersion.hpp"
#include "fracwave/experiment.hpp"
#include "fracwave/inequality.hpp"
#include "fracwave/spectral.hpp"

namespace fracwave {
namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kNumerical = 2;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::optional<double> alpha;
  std::optional<int> n;
  std::string model = "power";
  std::string alpha_grid;
  std::string seeds = "0";
  std::string lemma;
  std::string csv;
  std::string column;
  std::optional<double> s;
  double p = 4.0;
  std::optional<int> K;
  std::optional<long> N;
  int members = 1000;
};

int default_threads() {
  if (const char* env = std::getenv("FRACWAVE_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : width_(header.size()) { add_line(header); }

  template <class... Cells>
  void row(const Cells&... cells) {
    std::vector<std::string> line{cell(cells)...};
    add_line(line);
  }
  const std::string& text() const { return text_; }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double x) { return format_double(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(long x) { return std::to_string(x); }
  static std::string cell(std::uint64_t x) { return std::to_string(x); }

  void add_line(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("table row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + cells[i];
    text_ += '\n';
  }
  std::size_t width_;
  std::string text_;
};

void emit(const Table& t, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << t.text();
  } else {
    write_text(o.out, t.text());
  }
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentConfig c = load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (!o.out.empty()) c.output = o.out;
  c.validate();
  const auto rec = run_experiment(c);
  const std::string csv = trajectory_csv(rec, c);
  if (c.output.empty()) {
    out << csv;
  } else {
    write_text(c.output, csv);
  }
  if (rec.truncated) {
    err << "run truncated: " << rec.failure << '\n';
    return kNumerical;
  }
  return kOk;
}

int cmd_fit(const Options& o, std::ostream& out) {
  const auto rec = read_csv(o.csv);
  const auto model = parse_growth_model(o.model);
  std::string column = o.column;
  if (column.empty()) column = "H^" + format_double(o.s.value_or(1.0));
  GrowthFit fit;
  try {
    fit = fit_growth(rec, column, model);
  } catch (const std::invalid_argument& e) {
    // Valid input that cannot support a fit is a numerical failure, not a usage error.
    throw std::runtime_error(e.what());
  }
  Table t({"column", "model", "exponent", "intercept", "residual", "samples", "bound_A", "margin"});
  std::string bound = "", margin = "";
  if (o.alpha && o.n && model == GrowthModel::Power) {
    const double A = polynomial_growth_exponent(*o.alpha, *o.n);
    bound = format_double(A);
    margin = format_double(A - fit.exponent);
  }
  t.row(column, std::string(growth_model_name(model)), fit.exponent, fit.intercept, fit.residual,
        static_cast<long>(fit.samples), bound, margin);
  emit(t, o, out);
  return kOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentConfig base;
  if (!o.config.empty()) base = load_config(o.config);
  if (o.out.empty()) throw ConfigError("sweep needs --out <directory>");
  const auto alphas = parse_alpha_grid(o.alpha_grid.empty() ? format_double(base.alpha) : o.alpha_grid);
  const auto seeds = parse_seed_list(o.seeds);
  for (double a : alphas) {
    ExperimentConfig probe = base;
    probe.alpha = a;
    probe.validate();
  }
  const auto cells = run_sweep(base, alphas, seeds, o.out, o.threads);
  int code = kOk;
  Table t({"alpha", "seed", "file", "status"});
  for (const auto& c : cells) {
    std::string status = "ok";
    if (!c.error.empty()) {
      status = "error";
      err << c.output.string() << ": " << c.error << '\n';
      code = kNumerical;
    } else if (c.truncated) {
      status = "truncated";
      code = kNumerical;
    }
    t.row(c.alpha, c.seed, c.output.filename().string(), status);
  }
  out << t.text();
  return code;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::uint64_t seed = o.seed.value_or(0);
  const std::string& L = o.lemma;
  if (L == "phi") {
    const double a = o.alpha.value_or(1.5);
    Table t({"lemma", "alpha", "sup", "identity_defect"});
    t.row(L, a, phi_supremum(a), phi_identity_defect(a, o.K.value_or(512)));
    emit(t, o, out);
  } else if (L == "leibniz") {
    const double a = o.alpha.value_or(1.5);
    const int n = o.n.value_or(1);
    const int K = o.K.value_or(32);
    const auto e = leibniz_ensemble(a, n, K, o.members, seed, leibniz_default_sigma(a, n));
    Table t({"lemma", "alpha", "n", "K", "members", "max_ratio", "mean_ratio"});
    t.row(L, a, n, K, e.members, e.max_ratio, e.mean_ratio);
    emit(t, o, out);
  } else if (L == "kpv") {
    const int K = o.K.value_or(32);
    const auto e = kpv_ensemble(KpvExponents{}, K, o.members, seed, 2.0);
    Table t({"lemma", "s", "p", "K", "members", "max_ratio", "mean_ratio"});
    t.row(L, 0.5, 4.0 / 3.0, K, e.members, e.max_ratio, e.mean_ratio);
    emit(t, o, out);
  } else if (L == "bg") {
    const double s = o.s.value_or(1.0);
    Table t({"lemma", "s", "N", "ratio"});
    for (int N = 16; N <= 65536; N *= 4) {
      std::vector<Complex> c(static_cast<std::size_t>(2 * N + 1));
      for (int k = 1; k <= N; ++k) c[static_cast<std::size_t>(k + N)] = 1.0 / std::sqrt(static_cast<double>(k));
      const TorusField w(N, std::move(c));
      t.row(L, s, N, brezis_gallouet_ratio(w, s, transform_size(2 * N + 2)).ratio);
    }
    emit(t, o, out);
  } else if (L == "l1") {
    Table t({"lemma", "case", "K", "ratio"});
    t.row(L, "delta0", 1, l1_interpolation_check(TorusField::mode(1, 0)).ratio);
    t.row(L, "pair01", 1, l1_interpolation_check(TorusField::mode(1, 0) + TorusField::mode(1, 1)).ratio);
    for (int K : {8, 32, 128}) {
      TorusField w(K);
      for (int k = -K; k <= K; ++k) w += TorusField::mode(K, k, std::ldexp(1.0, -std::abs(k)));
      t.row(L, "geometric", K, l1_interpolation_check(w).ratio);
    }
    emit(t, o, out);
  } else if (L == "hankel") {
    const int K = o.K.value_or(64);
    const auto e = hankel_ensemble(K, o.members, seed, 1.0);
    Table t({"lemma", "K", "members", "max_ratio", "mean_ratio", "holds_with_constant_1"});
    t.row(L, K, e.members, e.max_ratio, e.mean_ratio, e.max_ratio <= 1.0 + 1e-12 ? "true" : "false");
    emit(t, o, out);
  } else if (L == "counterexample") {
    Table t({"lemma", "N", "ratio"});
    for (int N = 256; N <= (o.N ? static_cast<int>(*o.N) : 65536); N *= 4) t.row(L, N, log_counterexample(N).ratio);
    emit(t, o, out);
  } else if (L == "gn") {
    const double s = o.s.value_or(0.5);
    const int K = o.K.value_or(32);
    const auto e = gn_ensemble(s, o.p, K, o.members, seed, 2.0);
    Table t({"lemma", "s", "p", "K", "members", "max_ratio", "mean_ratio"});
    t.row(L, s, o.p, K, e.members, e.max_ratio, e.mean_ratio);
    emit(t, o, out);
  } else if (L == "dispersion") {
    const double a = o.alpha.value_or(0.8);
    std::vector<long> Ns;
    for (long N = 64; N <= o.N.value_or(1024); N *= 2) Ns.push_back(N);
    std::vector<double> ts;
    const double t_min = 4.0 / std::pow(static_cast<double>(Ns.back()), a);
    for (int i = 0; i < 300; ++i) ts.push_back(t_min * std::pow(1.0 / t_min, i / 299.0));
    const auto fit = dispersion_constant_fit(a, Ns, ts);
    Table t({"lemma", "alpha", "N", "C_N", "variation"});
    for (std::size_t i = 0; i < Ns.size(); ++i) t.row(L, a, Ns[i], fit.C_per_N[i], fit.variation);
    emit(t, o, out);
  } else if (L == "strichartz") {
    const double a = o.alpha.value_or(0.8);
    const int members = std::min(o.members, 50);
    Table t({"lemma", "alpha", "N", "members", "max_ratio", "mean_ratio"});
    for (long N = 16; N <= o.N.value_or(512); N *= 2) {
      const auto e = strichartz_ensemble(a, N, members, seed);
      t.row(L, a, N, e.members, e.max_ratio, e.mean_ratio);
    }
    emit(t, o, out);
  } else {
    throw CLI::ValidationError("verify", "unknown lemma '" + L + "'");
  }
  return kOk;
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"fracwave: spectral experiments for fractional NLS, half-wave and Szego flows on the torus"};
  app.require_subcommand(1);
  Options o;
  o.threads = default_threads();

  auto* run = app.add_subcommand("run", "Evolve the configured equation and write a trajectory CSV");
  run->add_option("--config", o.config, "Configuration file")->required();
  run->add_option("--out", o.out, "Output CSV (overrides the config)");
  run->add_option("--seed", o.seed, "Seed (overrides the config)");
  run->add_option("--threads", o.threads, "Accepted for symmetry; single runs are serial");

  auto* verify = app.add_subcommand("verify", "Evaluate an inequality or identity and print a verdict CSV");
  verify->add_option("lemma", o.lemma, "leibniz, phi, kpv, bg, l1, hankel, counterexample, gn, dispersion, strichartz")
      ->required()
      ->check(CLI::IsMember({"leibniz", "phi", "kpv", "bg", "l1", "hankel", "counterexample", "gn", "dispersion",
                             "strichartz"}));
  verify->add_option("--alpha", o.alpha, "Dispersion exponent");
  verify->add_option("--n", o.n, "Derivative order n");
  verify->add_option("--K", o.K, "Max mode of ensemble fields");
  verify->add_option("--N", o.N, "Largest N of a sequence");
  verify->add_option("--s", o.s, "Sobolev order");
  verify->add_option("--p", o.p, "Lebesgue exponent (gn)");
  verify->add_option("--members", o.members, "Ensemble size")->check(CLI::PositiveNumber);
  verify->add_option("--seed", o.seed, "Ensemble seed");
  verify->add_option("--out", o.out, "Write the verdict CSV here instead of stdout");
  verify->add_option("--threads", o.threads, "Accepted for symmetry");

  auto* fit = app.add_subcommand("fit", "Fit a growth model to a norm column of a trajectory CSV");
  fit->add_option("csv", o.csv, "Trajectory CSV")->required();
  fit->add_option("--model", o.model, "power, exp_t or exp_t2");
  fit->add_option("--column", o.column, "Column to fit (default H^s)");
  fit->add_option("--s", o.s, "Sobolev order selecting the column H^s");
  fit->add_option("--alpha", o.alpha, "Report the polynomial bound exponent for this alpha");
  fit->add_option("--n", o.n, "n for the polynomial bound exponent");
  fit->add_option("--out", o.out, "Write the fit CSV here instead of stdout");

  auto* sweep = app.add_subcommand("sweep", "Run an alpha x seed grid of experiments in parallel");
  sweep->add_option("--config", o.config, "Base configuration file");
  sweep->add_option("--alpha", o.alpha_grid, "Alpha grid a:step:b or a comma list");
  sweep->add_option("--seeds", o.seeds, "Seeds a..b (half open) or a comma list");
  sweep->add_option("--out", o.out, "Output directory")->required();
  sweep->add_option("--threads", o.threads, "Worker threads (default FRACWAVE_THREADS or 1)")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", o.seed, "Unused; seeds come from --seeds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*run) return cmd_run(o, out, err);
    if (*verify) return cmd_verify(o, out);
    if (*fit) return cmd_fit(o, out);
    if (*sweep) return cmd_sweep(o, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

}  // namespace fracwave
