#include "zicure/optimizer.hpp"

#include <cmath>
#include <numeric>

namespace zicure {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

BfgsResult bfgs_maximize(const ScalarObjective& f, const VectorGradient& grad,
                         std::vector<double> x0, const BfgsOptions& options,
                         const std::function<bool(std::vector<double>&)>& clamp) {
  const std::size_t n = x0.size();
  BfgsResult res;
  res.x = std::move(x0);
  if (clamp) res.clamp_hit = clamp(res.x) || res.clamp_hit;

  // internally minimize phi = -f
  auto phi = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return -f(x);
  };
  auto phi_grad = [&](const std::vector<double>& x) {
    std::vector<double> g = grad(x);
    for (double& v : g) v = -v;
    return g;
  };

  double fx = phi(res.x);
  std::vector<double> g = phi_grad(res.x);

  // inverse-Hessian approximation, row-major identity
  std::vector<double> H(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) H[i * n + i] = 1.0;

  std::vector<double> d(n), x_new(n), g_new(n), s(n), y(n), Hy(n);
  bool reset_done = false;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    res.iterations = iter + 1;

    if (inf_norm(g) < options.gradient_tolerance * std::max(1.0, std::fabs(fx))) {
      res.converged = true;
      break;
    }

    // d = -H g
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += H[i * n + j] * g[j];
      d[i] = -acc;
    }
    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      // not a descent direction; fall back to steepest descent
      for (std::size_t i = 0; i < n; ++i) {
        H[i * n + i] = 1.0;
        for (std::size_t j = 0; j < n; ++j)
          if (i != j) H[i * n + j] = 0.0;
        d[i] = -g[i];
      }
      slope = dot(g, d);
      if (!(slope < 0.0)) break;  // gradient vanished or non-finite
    }

    // backtracking Armijo search; the very first step is gradient-scaled so
    // a raw steepest-descent direction does not probe absurd points
    double step = iter == 0 ? std::min(1.0, 1.0 / std::max(1.0, inf_norm(g))) : 1.0;
    double f_new = fx;
    bool accepted = false;
    bool trial_clamped = false;
    for (int bt = 0; bt < options.max_backtracks; ++bt) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = res.x[i] + step * d[i];
      trial_clamped = clamp && clamp(x_new);
      f_new = phi(x_new);
      if (std::isfinite(f_new) && f_new <= fx + options.armijo_c * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }

    if (!accepted) {
      if (!reset_done) {
        // restart the curvature model once, then give the search another go
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) H[i * n + j] = i == j ? 1.0 : 0.0;
        reset_done = true;
        continue;
      }
      break;  // stalled
    }

    // the bound flag records clamping of accepted iterates, not rejected probes
    if (trial_clamped) res.clamp_hit = true;

    g_new = phi_grad(x_new);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = x_new[i] - res.x[i];
      y[i] = g_new[i] - g[i];
    }

    const double f_old = fx;
    res.x = x_new;
    fx = f_new;
    g = g_new;

    if (std::fabs(f_old - fx) <= options.objective_rel_tol * std::max(1.0, std::fabs(fx))) {
      res.converged = true;
      break;
    }

    // BFGS inverse update; skipped when the curvature condition fails
    const double sy = dot(s, y);
    double snorm = std::sqrt(dot(s, s)), ynorm = std::sqrt(dot(y, y));
    if (sy > 1e-12 * snorm * ynorm) {
      const double rho = 1.0 / sy;
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += H[i * n + j] * y[j];
        Hy[i] = acc;
      }
      const double yHy = dot(y, Hy);
      // H <- H - rho (Hy s' + s (Hy)') + rho^2 yHy s s' + rho s s'
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          H[i * n + j] += -rho * (Hy[i] * s[j] + s[i] * Hy[j]) +
                          (rho * rho * yHy + rho) * s[i] * s[j];
        }
      }
    }
  }

  res.value = -fx;
  return res;
}

}  // namespace zicure
