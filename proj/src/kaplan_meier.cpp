#include "zicure/kaplan_meier.hpp"

#include <algorithm>
#include <stdexcept>

namespace zicure {

SurvivalCurve kaplan_meier(const Dataset& data, std::string label) {
  if (data.n() == 0) throw std::invalid_argument("kaplan_meier: empty dataset");

  std::vector<std::pair<double, int>> obs;
  obs.reserve(data.n());
  for (const auto& row : data.rows) obs.emplace_back(row.time, row.event);
  // events precede censorings at tied times
  std::sort(obs.begin(), obs.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  });

  SurvivalCurve curve;
  curve.kind = CurveKind::empirical;
  curve.label = std::move(label);

  double at_risk = static_cast<double>(obs.size());
  double surv = 1.0;
  if (obs.front().first != 0.0) curve.points.push_back({0.0, 1.0});
  std::size_t i = 0;
  while (i < obs.size()) {
    const double t = obs[i].first;
    double events = 0.0, removed = 0.0;
    for (; i < obs.size() && obs[i].first == t; ++i) {
      events += obs[i].second == 1 ? 1.0 : 0.0;
      removed += 1.0;
    }
    if (events > 0.0) surv *= 1.0 - events / at_risk;
    if (t == 0.0 || events > 0.0) curve.points.push_back({t, surv});
    at_risk -= removed;
  }
  return curve;
}

SurvivalCurve model_curve(const ParameterVector& params, std::span<const double> x,
                          ModelVariant variant, std::span<const double> grid,
                          std::string label) {
  if (grid.empty() || grid.front() != 0.0) {
    throw std::invalid_argument("model_curve: grid must start at 0");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("model_curve: grid must be strictly ascending");
    }
  }
  const MixtureWeights w = link_weights(x, params.coeffs);
  SurvivalCurve curve;
  curve.kind = CurveKind::fitted;
  curve.label = std::move(label);
  curve.points.reserve(grid.size());
  for (double t : grid) {
    curve.points.push_back({t, population_survival(t, w, params.weibull, variant)});
  }
  return curve;
}

SurvivalCurve fitted_curve(const FitResult& fit, std::span<const double> x,
                           ModelVariant variant, std::span<const double> grid,
                           std::string label) {
  if (!fit.converged) throw std::invalid_argument("fitted_curve: fit did not converge");
  return model_curve(fit.estimates, x, variant, grid, std::move(label));
}

}  // namespace zicure
