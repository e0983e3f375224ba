#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zicure/dataset.hpp"
#include "zicure/likelihood.hpp"

namespace zicure {

struct FitConfig {
  int max_iterations = 500;
  double gradient_tolerance = 1e-5;
  double objective_rel_tol = 1e-10;
  int restarts = 3;
  std::uint64_t seed = 0;  // drives the jittered restart initializations
  double confidence_level = 0.95;
  double weibull_bound = 50.0;  // |alpha_log|, |lambda_log| box for line-search proposals
};

struct FitResult {
  ParameterVector estimates;
  std::vector<double> std_errors;
  std::vector<double> ci_lower;
  std::vector<double> ci_upper;
  std::vector<double> z_ratios;
  Eigen::MatrixXd covariance;
  double log_lik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  bool converged = false;
  int iterations = 0;
  long underflow_rows = 0;
  double hessian_condition = 0.0;
  bool weibull_bound_hit = false;
  std::size_t n_obs = 0;
  std::size_t n_params = 0;
  double confidence_level = 0.95;
  ModelVariant variant = ModelVariant::zipcr;
};

// Thrown when the negated log-likelihood Hessian is not positive definite at
// the supposed maximum; carries the offending eigenvalue.
struct NotPositiveDefinite : std::runtime_error {
  explicit NotPositiveDefinite(double eig);
  double smallest_eigenvalue;
};

// Maximum-likelihood fit. Requires at least one uncensored positive-time row,
// at least one censored row and a full-column-rank design; throws
// std::invalid_argument otherwise. Starts from `init` when given, else from
// moment-matched seeds (logit of the zero and censored fractions, log median
// positive time); restarts from jittered seeds if the first run fails to
// converge, keeping the best.
FitResult fit(const Dataset& data, ModelVariant variant, const FitConfig& config = {},
              const ParameterVector* init = nullptr);

// Observed information -d2l/dpdp' from central differences of the gradient
// (step 1e-4 max(1,|param_j|)), symmetrized. Throws NotPositiveDefinite when
// any eigenvalue is <= 0.
Eigen::MatrixXd observed_information(const Dataset& data, const ParameterVector& params,
                                     ModelVariant variant);

// Standard-normal quantile (inverse CDF), accurate to ~1e-15.
double norm_quantile(double p);

// (est - z se, est + z se) with z the normal quantile at 1-(1-level)/2.
std::pair<double, double> wald_interval(double est, double se, double level);

// |est| / se; throws std::domain_error for se <= 0.
double wald_z(double est, double se);

// AIC = -2 log_lik + 2k, BIC = -2 log_lik + k log(n).
std::pair<double, double> information_criteria(double log_lik, std::size_t k, std::size_t n);

struct GroupOutcome {
  std::vector<double> covariates;
  double gamma0 = 0.0;
  double gamma1 = 0.0;
};

// Mixture weights implied by the fitted coefficients for each covariate
// pattern (the per-group zero and cure fractions).
std::vector<GroupOutcome> group_outcomes(const ParameterVector& params,
                                         const std::vector<std::vector<double>>& groups);
std::vector<GroupOutcome> group_outcomes(const FitResult& fit,
                                         const std::vector<std::vector<double>>& groups);

}  // namespace zicure
