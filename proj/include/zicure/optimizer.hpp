#pragma once

#include <functional>
#include <vector>

#include "zicure/numdiff.hpp"

namespace zicure {

struct BfgsOptions {
  int max_iterations = 500;
  // converged when ||grad||_inf < gradient_tolerance * max(1, |f|)
  double gradient_tolerance = 1e-5;
  // ... or when the relative objective change over one iteration drops below
  double objective_rel_tol = 1e-10;
  double armijo_c = 1e-4;
  int max_backtracks = 60;
};

struct BfgsResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  long evaluations = 0;
  bool clamp_hit = false;
};

// Dense BFGS maximization with backtracking Armijo line search. `clamp`, when
// provided, projects trial points into the feasible box in place and returns
// true if it moved the point; activations are reported via clamp_hit.
BfgsResult bfgs_maximize(const ScalarObjective& f, const VectorGradient& grad,
                         std::vector<double> x0, const BfgsOptions& options = {},
                         const std::function<bool(std::vector<double>&)>& clamp = {});

}  // namespace zicure
