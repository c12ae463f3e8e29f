#include <algorithm>
#include <cmath>

#include "fracwave/experiment.hpp"

namespace fracwave {

GrowthModel parse_growth_model(std::string_view name) {
  if (name == "power") return GrowthModel::Power;
  if (name == "exp_t") return GrowthModel::ExpT;
  if (name == "exp_t2") return GrowthModel::ExpT2;
  throw ConfigError("unknown growth model '" + std::string(name) + "' (expected power, exp_t, exp_t2)");
}

std::string_view growth_model_name(GrowthModel m) {
  switch (m) {
    case GrowthModel::Power: return "power";
    case GrowthModel::ExpT: return "exp_t";
    case GrowthModel::ExpT2: return "exp_t2";
  }
  return "unknown";
}

GrowthFit fit_growth(const TrajectoryRecord& rec, std::string_view column, GrowthModel model) {
  const auto t = rec.times();
  const auto y = rec.column(column);
  double t_lo = 0.0, t_hi = 0.0;
  for (double v : t) {
    const double a = std::abs(v);
    if (a > 0.0 && (t_lo == 0.0 || a < t_lo)) t_lo = a;
    t_hi = std::max(t_hi, a);
  }
  const bool decades = t_lo > 0.0 && t_hi / t_lo >= 100.0;
  if (t.size() < 100 && !decades) {
    throw std::invalid_argument("fit_growth: need >= 100 samples or a t span of >= 2 decades");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(y[i] > 0.0)) throw std::invalid_argument("fit_growth: column must be positive");
    const double a = std::abs(t[i]);
    const double x = model == GrowthModel::Power ? std::log1p(a) : model == GrowthModel::ExpT ? a : a * a;
    xs.push_back(x);
    ys.push_back(std::log(y[i]));
  }
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n, my = sy / n;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_growth: time samples are degenerate");
  GrowthFit fit;
  fit.model = model;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.exponent * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  fit.samples = xs.size();
  return fit;
}

GrowthFit fit_growth(const TrajectoryRecord& rec, double s, GrowthModel model) {
  return fit_growth(rec, "H^" + format_double(s), model);
}

}  // namespace fracwave
