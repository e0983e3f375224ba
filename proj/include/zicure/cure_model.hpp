#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "zicure/weibull.hpp"

namespace zicure {

// Survival family selector. Both variants share the parameter layout and the
// three-way multinomial link; they differ in the susceptible lifetime law:
// zipcr uses the bounded-cumulative-hazard (promotion) susceptible survival,
// zicr uses the plain Weibull survival.
enum class ModelVariant { zipcr, zicr };

// Regression coefficients for the two linked parts. Each vector holds the
// intercept followed by q covariate slopes.
struct RegressionCoefficients {
  std::vector<double> beta_kappa;  // zero-inflation part
  std::vector<double> beta_theta;  // cure part

  std::size_t q() const { return beta_kappa.empty() ? 0 : beta_kappa.size() - 1; }
};

// Per-subject mixture weights. gamma0 = P(lifetime exactly 0),
// gamma1 = P(never fails); kappa = -log gamma0, theta = -log gamma1 (theta is
// also the Poisson mean of the latent cause count in the promotion variant).
struct MixtureWeights {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double kappa = 0.0;
  double theta = 0.0;
};

// Full parameter set, kept in the unconstrained parametrization. Flat layout
// is fixed as [beta_kappa(0..q), beta_theta(0..q), alpha_log, lambda_log].
struct ParameterVector {
  RegressionCoefficients coeffs;
  WeibullParams weibull;

  std::size_t size() const { return coeffs.beta_kappa.size() + coeffs.beta_theta.size() + 2; }
  std::vector<double> flatten() const;
  static ParameterVector from_flat(std::span<const double> v, std::size_t q);
};

// Three-category multinomial link with the susceptible class pinned at 0:
//   gamma0 = e^{eta_k} / (1 + e^{eta_k} + e^{eta_t}),
//   gamma1 = e^{eta_t} / (1 + e^{eta_k} + e^{eta_t}),
// where eta_k = beta_kappa0 + x_zero'beta_kappa, eta_t likewise with x_cure.
// The shared denominator guarantees gamma0 + gamma1 < 1. Computed with
// max-subtraction; kappa/theta are evaluated in log space so they stay finite
// even when a gamma underflows.
MixtureWeights link_weights(std::span<const double> x_zero,
                            std::span<const double> x_cure,
                            const RegressionCoefficients& coeffs);
MixtureWeights link_weights(std::span<const double> x, const RegressionCoefficients& coeffs);

// Proper susceptible survival. zipcr:
//   S*(t) = (exp(-theta F(t)) - exp(-theta)) / (1 - exp(-theta)),
// evaluated through expm1; below theta = 1e-8 the analytic limit 1 - F(t) is
// used. zicr: 1 - F(t). Throws std::domain_error for theta <= 0.
double susceptible_survival(double t, double theta, const WeibullParams& wp, ModelVariant variant);

// Susceptible density, -d/dt of susceptible_survival. zipcr:
//   f*(t) = (exp(-theta F(t)) / (1 - exp(-theta))) theta f(t).
double susceptible_density(double t, double theta, const WeibullParams& wp, ModelVariant variant);
double log_susceptible_density(double t, double theta, const WeibullParams& wp, ModelVariant variant);

// Improper population survival S(t) = gamma1 + (1-gamma0-gamma1) S*(t),
// computed as gamma1 (1-S*) + (1-gamma0) S* so that S(0) = 1-gamma0 and the
// t -> inf plateau gamma1 are hit exactly.
double population_survival(double t, const MixtureWeights& w, const WeibullParams& wp,
                           ModelVariant variant);

}  // namespace zicure
