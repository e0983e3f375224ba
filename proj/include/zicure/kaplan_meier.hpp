#pragma once

#include <span>
#include <string>
#include <vector>

#include "zicure/dataset.hpp"
#include "zicure/estimator.hpp"

namespace zicure {

enum class CurveKind { empirical, fitted };

struct CurvePoint {
  double time = 0.0;
  double survival = 1.0;
};

struct SurvivalCurve {
  std::vector<CurvePoint> points;  // times strictly increasing, survival nonincreasing
  CurveKind kind = CurveKind::empirical;
  std::string label;
};

// Product-limit estimate over distinct event times, ties resolved events
// before censorings. Zero-time events are kept in the risk set and fail at
// t = 0, so the first point is (0, 1 - d0/n); a t = 0 point is always
// emitted. Later points appear only at times with at least one event.
SurvivalCurve kaplan_meier(const Dataset& data, std::string label = {});

// Population survival of the model at `params` for a covariate pattern,
// evaluated on a grid (sorted ascending, starting at 0).
SurvivalCurve model_curve(const ParameterVector& params, std::span<const double> x,
                          ModelVariant variant, std::span<const double> grid,
                          std::string label = {});

// Same, from a converged fit; throws std::invalid_argument if the fit did not
// converge.
SurvivalCurve fitted_curve(const FitResult& fit, std::span<const double> x,
                           ModelVariant variant, std::span<const double> grid,
                           std::string label = {});

}  // namespace zicure
