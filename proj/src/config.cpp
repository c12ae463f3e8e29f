#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fracwave/experiment.hpp"

namespace fracwave {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view s) {
  s = trim(s);
  Int v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
    throw ConfigError("expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::pair<int, Complex>> parse_coeffs(std::string_view s) {
  std::vector<std::pair<int, Complex>> out;
  if (trim(s).empty()) return out;
  for (auto item : split(s, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 3) throw ConfigError("coefficient entries look like k:re:im, got '" + std::string(item) + "'");
    out.emplace_back(parse_int<int>(parts[0]), Complex(parse_double(parts[1]), parse_double(parts[2])));
  }
  return out;
}

std::string coeffs_text(const std::vector<std::pair<int, Complex>>& cs) {
  std::string out;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(cs[i].first) + ":" + format_double(cs[i].second.real()) + ":" +
           format_double(cs[i].second.imag());
  }
  return out;
}

}  // namespace

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
    throw ConfigError("expected a number, got '" + std::string(s) + "'");
  }
  return v;
}

std::string format_double(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, p);
}

EvolutionSpec ExperimentConfig::spec() const {
  try {
    return parse_evolution_spec(variant, alpha);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void ExperimentConfig::validate() const {
  spec();
  if (K < 4) throw ConfigError("K must be >= 4");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  if (T == 0.0 || !std::isfinite(T)) throw ConfigError("T must be finite and nonzero");
  if (sample_every < 1) throw ConfigError("sample_every must be >= 1");
  for (double s : norms) {
    if (!std::isfinite(s)) throw ConfigError("norm orders must be finite");
  }
  if (std::set<double>(norms.begin(), norms.end()).size() != norms.size()) throw ConfigError("norms repeat a value");
  std::set<std::pair<double, int>> seen;
  for (const auto& e : energies) {
    if (!(e.alpha > 0.0 && e.alpha <= 2.0)) throw ConfigError("energy alpha must lie in (0, 2]");
    if (e.n < 0) throw ConfigError("energy n must be >= 0");
    if (!seen.insert({e.alpha, e.n}).second) throw ConfigError("energies repeat an (alpha, n) pair");
  }
  if (init.kind == InitialData::Kind::Coeffs) {
    if (init.coeffs.empty()) throw ConfigError("init = coeffs needs init_coeffs");
    if (is_pair() && init.coeffs2.empty()) throw ConfigError("pair runs with init = coeffs need init_coeffs2");
    for (const auto* list : {&init.coeffs, &init.coeffs2}) {
      for (const auto& [k, c] : *list) {
        if (std::abs(k) > K) throw ConfigError("init coefficient mode " + std::to_string(k) + " exceeds K");
        if (variant == "szego" && k < 0) throw ConfigError("szego data must not have negative modes");
      }
    }
  } else if (!(init.amplitude >= 0.0) || !std::isfinite(init.sigma)) {
    throw ConfigError("init_amplitude must be >= 0 and init_sigma finite");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
    if (eq == std::string_view::npos) throw ConfigError(where() + "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw ConfigError(where() + "duplicate key '" + key + "'");
    try {
      if (key == "variant") {
        c.variant = std::string(value);
      } else if (key == "alpha") {
        c.alpha = parse_double(value);
      } else if (key == "K") {
        c.K = parse_int<int>(value);
      } else if (key == "dt") {
        c.dt = parse_double(value);
      } else if (key == "T") {
        c.T = parse_double(value);
      } else if (key == "sample_every") {
        c.sample_every = parse_int<int>(value);
      } else if (key == "init") {
        if (value == "random") {
          c.init.kind = InitialData::Kind::Random;
        } else if (value == "coeffs") {
          c.init.kind = InitialData::Kind::Coeffs;
        } else {
          throw ConfigError("init must be random or coeffs");
        }
      } else if (key == "init_sigma") {
        c.init.sigma = parse_double(value);
      } else if (key == "init_amplitude") {
        c.init.amplitude = parse_double(value);
      } else if (key == "init_coeffs") {
        c.init.coeffs = parse_coeffs(value);
      } else if (key == "init_coeffs2") {
        c.init.coeffs2 = parse_coeffs(value);
      } else if (key == "norms") {
        c.norms.clear();
        if (!value.empty()) {
          for (auto s : split(value, ',')) c.norms.push_back(parse_double(s));
        }
      } else if (key == "energies") {
        c.energies.clear();
        if (!value.empty()) {
          for (auto item : split(value, ',')) {
            const auto parts = split(item, ':');
            if (parts.size() != 2) throw ConfigError("energies entries look like alpha:n");
            c.energies.push_back({parse_double(parts[0]), parse_int<int>(parts[1])});
          }
        }
      } else if (key == "output") {
        c.output = std::string(value);
      } else if (key == "seed") {
        c.seed = parse_int<std::uint64_t>(value);
      } else {
        throw ConfigError("unknown key '" + key + "'");
      }
    } catch (const ConfigError& e) {
      throw ConfigError(where() + e.what());
    }
  }
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_text(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "variant = " << c.variant << '\n';
  os << "alpha = " << format_double(c.alpha) << '\n';
  os << "K = " << c.K << '\n';
  os << "dt = " << format_double(c.dt) << '\n';
  os << "T = " << format_double(c.T) << '\n';
  os << "sample_every = " << c.sample_every << '\n';
  if (c.init.kind == InitialData::Kind::Random) {
    os << "init = random\n";
    os << "init_sigma = " << format_double(c.init.sigma) << '\n';
    os << "init_amplitude = " << format_double(c.init.amplitude) << '\n';
  } else {
    os << "init = coeffs\n";
    os << "init_coeffs = " << coeffs_text(c.init.coeffs) << '\n';
    if (!c.init.coeffs2.empty()) os << "init_coeffs2 = " << coeffs_text(c.init.coeffs2) << '\n';
  }
  os << "norms = ";
  for (std::size_t i = 0; i < c.norms.size(); ++i) os << (i ? ", " : "") << format_double(c.norms[i]);
  os << '\n';
  os << "energies = ";
  for (std::size_t i = 0; i < c.energies.size(); ++i) {
    os << (i ? ", " : "") << format_double(c.energies[i].alpha) << ':' << c.energies[i].n;
  }
  os << '\n';
  if (!c.output.empty()) os << "output = " << c.output << '\n';
  os << "seed = " << c.seed << '\n';
  return os.str();
}

}  // namespace fracwave
