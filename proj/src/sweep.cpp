#include <atomic>
#include <cmath>
#include <thread>

#include "fracwave/experiment.hpp"

namespace fracwave {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

double round9(double x) { return std::round(x * 1e9) / 1e9; }

std::uint64_t parse_u64(std::string_view s) {
  s = trim(s);
  if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
    throw ConfigError("expected a seed, got '" + std::string(s) + "'");
  }
  return std::stoull(std::string(s));
}

}  // namespace

std::vector<double> parse_alpha_grid(std::string_view text) {
  text = trim(text);
  std::vector<double> out;
  if (text.find(':') != std::string_view::npos) {
    const auto p1 = text.find(':');
    const auto p2 = text.find(':', p1 + 1);
    if (p2 == std::string_view::npos) throw ConfigError("alpha grid must look like a:step:b");
    const double a = parse_double(text.substr(0, p1));
    const double step = parse_double(text.substr(p1 + 1, p2 - p1 - 1));
    const double b = parse_double(text.substr(p2 + 1));
    if (!(step > 0.0) || b < a) throw ConfigError("alpha grid needs step > 0 and a <= b");
    const long n = static_cast<long>(std::floor((b - a) / step + 1e-9)) + 1;
    for (long i = 0; i < n; ++i) out.push_back(round9(a + static_cast<double>(i) * step));
  } else {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto pos = text.find(',', start);
      out.push_back(parse_double(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
  }
  if (out.empty()) throw ConfigError("empty alpha grid");
  return out;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  text = trim(text);
  std::vector<std::uint64_t> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto lo = parse_u64(text.substr(0, dots));
    const auto hi = parse_u64(text.substr(dots + 2));
    if (hi <= lo) throw ConfigError("seed range a..b needs a < b");
    for (auto s = lo; s < hi; ++s) out.push_back(s);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(',', start);
    out.push_back(parse_u64(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string sweep_file_name(double alpha, std::uint64_t seed) {
  return "sweep_a" + format_double(alpha) + "_s" + std::to_string(seed) + ".csv";
}

std::vector<SweepCell> run_sweep(const ExperimentConfig& base, const std::vector<double>& alphas,
                                 const std::vector<std::uint64_t>& seeds, const std::filesystem::path& out_dir,
                                 int threads) {
  std::vector<SweepCell> cells;
  for (double a : alphas) {
    for (auto s : seeds) cells.push_back({a, s, out_dir / sweep_file_name(a, s), false, {}});
  }
  std::filesystem::create_directories(out_dir);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      SweepCell& cell = cells[i];
      try {
        ExperimentConfig c = base;
        c.alpha = cell.alpha;
        c.seed = cell.seed;
        c.output = cell.output.filename().string();
        const auto rec = run_experiment(c);
        cell.truncated = rec.truncated;
        write_text(cell.output, trajectory_csv(rec, c));
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return cells;
}

}  // namespace fracwave
