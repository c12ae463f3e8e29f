#include <fstream>
#include <sstream>

#include "fracwave/experiment.hpp"

namespace fracwave {

std::string trajectory_csv(const TrajectoryRecord& rec, const ExperimentConfig& c) {
  std::ostringstream os;
  os << "# fracwave " << kVersion << '\n';
  os << "# seed: " << c.seed << '\n';
  if (c.init.kind == InitialData::Kind::Random) {
    os << "# initial data: seeded random ensemble u_k = A r_k e^{i theta_k} (1+k^2)^{-sigma/2} (Philox4x32-10); "
          "a modeling choice, not canonical data\n";
  } else {
    os << "# initial data: explicit coefficients\n";
  }
  std::istringstream cfg(config_text(c));
  for (std::string line; std::getline(cfg, line);) os << "# config: " << line << '\n';
  for (std::size_t j = 0; j < rec.columns.size(); ++j) os << (j ? "," : "") << rec.columns[j];
  os << '\n';
  for (const auto& row : rec.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_double(row[j]);
    os << '\n';
  }
  if (rec.truncated) {
    os << "# truncated: last valid time " << format_double(rec.last_valid_time) << "; " << rec.failure << '\n';
  }
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

TrajectoryRecord parse_csv(std::string_view text) {
  TrajectoryRecord rec;
  std::istringstream in{std::string(text)};
  bool have_header = false;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# truncated", 0) == 0) rec.truncated = true;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    if (!have_header) {
      rec.columns = cells;
      have_header = true;
      if (rec.columns.empty() || rec.columns[0] != "t") throw ConfigError("CSV header must start with t");
      continue;
    }
    if (cells.size() != rec.columns.size()) {
      throw ConfigError("CSV line " + std::to_string(line_no) + ": expected " + std::to_string(rec.columns.size()) +
                        " fields");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (const auto& cell : cells) row.push_back(parse_double(cell));
    rec.rows.push_back(std::move(row));
  }
  if (!have_header) throw ConfigError("CSV has no header line");
  if (!rec.rows.empty()) rec.last_valid_time = rec.rows.back()[0];
  return rec;
}

TrajectoryRecord read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace fracwave
