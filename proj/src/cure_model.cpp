#include "zicure/cure_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace zicure {

namespace {

// theta below which the zipcr susceptible law switches to its 1 - F limit
// (the ratio form is 0/0 as theta -> 0)
constexpr double kThetaLimit = 1e-8;

double linear_predictor(std::span<const double> x, const std::vector<double>& beta,
                        const char* part) {
  if (x.size() + 1 != beta.size()) {
    throw std::invalid_argument(std::string("link_weights: covariate length ") +
                                std::to_string(x.size()) + " does not match " + part +
                                " coefficient length " + std::to_string(beta.size()));
  }
  double eta = beta[0];
  for (std::size_t j = 0; j < x.size(); ++j) eta += beta[j + 1] * x[j];
  if (!std::isfinite(eta)) {
    for (std::size_t j = 0; j < beta.size(); ++j) {
      const double term = j == 0 ? beta[0] : beta[j] * x[j - 1];
      if (!std::isfinite(term)) {
        throw std::runtime_error(std::string("link_weights: non-finite ") + part +
                                 " predictor at coefficient index " + std::to_string(j));
      }
    }
    throw std::runtime_error(std::string("link_weights: non-finite ") + part + " predictor");
  }
  return eta;
}

}  // namespace

std::vector<double> ParameterVector::flatten() const {
  std::vector<double> v;
  v.reserve(size());
  v.insert(v.end(), coeffs.beta_kappa.begin(), coeffs.beta_kappa.end());
  v.insert(v.end(), coeffs.beta_theta.begin(), coeffs.beta_theta.end());
  v.push_back(weibull.alpha_log);
  v.push_back(weibull.lambda_log);
  return v;
}

ParameterVector ParameterVector::from_flat(std::span<const double> v, std::size_t q) {
  if (v.size() != 2 * (q + 1) + 2) {
    throw std::invalid_argument("ParameterVector::from_flat: expected length " +
                                std::to_string(2 * (q + 1) + 2) + ", got " +
                                std::to_string(v.size()));
  }
  ParameterVector p;
  p.coeffs.beta_kappa.assign(v.begin(), v.begin() + (q + 1));
  p.coeffs.beta_theta.assign(v.begin() + (q + 1), v.begin() + 2 * (q + 1));
  p.weibull.alpha_log = v[2 * (q + 1)];
  p.weibull.lambda_log = v[2 * (q + 1) + 1];
  return p;
}

MixtureWeights link_weights(std::span<const double> x_zero, std::span<const double> x_cure,
                            const RegressionCoefficients& coeffs) {
  const double eta_k = linear_predictor(x_zero, coeffs.beta_kappa, "zero-inflation");
  const double eta_t = linear_predictor(x_cure, coeffs.beta_theta, "cure");

  const double m = std::max({0.0, eta_k, eta_t});
  const double e0 = std::exp(-m);
  const double ek = std::exp(eta_k - m);
  const double et = std::exp(eta_t - m);
  const double denom = e0 + ek + et;

  MixtureWeights w;
  w.gamma0 = ek / denom;
  w.gamma1 = et / denom;
  // -log of the softmax terms, in log space so extreme predictors stay
  // finite; the max-shifted term is exactly 1, so denom-1 is summed without
  // cancellation and log1p keeps kappa/theta positive when a gamma saturates
  const double rest = m == 0.0 ? ek + et : (m == eta_k ? e0 + et : e0 + ek);
  const double log_denom = m + std::log1p(rest);
  w.kappa = log_denom - eta_k;
  w.theta = log_denom - eta_t;
  return w;
}

MixtureWeights link_weights(std::span<const double> x, const RegressionCoefficients& coeffs) {
  return link_weights(x, x, coeffs);
}

double susceptible_survival(double t, double theta, const WeibullParams& wp,
                            ModelVariant variant) {
  if (!(theta > 0.0)) {
    throw std::domain_error("susceptible_survival: theta must be positive");
  }
  const double F = weibull_cdf(t, wp);
  if (variant == ModelVariant::zicr || theta < kThetaLimit) return 1.0 - F;
  const double em = std::expm1(-theta);  // e^{-theta} - 1 < 0
  return (std::expm1(-theta * F) - em) / (-em);
}

double log_susceptible_density(double t, double theta, const WeibullParams& wp,
                               ModelVariant variant) {
  if (!(theta > 0.0)) {
    throw std::domain_error("susceptible_density: theta must be positive");
  }
  const double log_f = weibull_log_pdf(t, wp);
  if (variant == ModelVariant::zicr || theta < kThetaLimit) return log_f;
  const double F = weibull_cdf(t, wp);
  return -theta * F + std::log(theta) - std::log(-std::expm1(-theta)) + log_f;
}

double susceptible_density(double t, double theta, const WeibullParams& wp,
                           ModelVariant variant) {
  return std::exp(log_susceptible_density(t, theta, wp, variant));
}

double population_survival(double t, const MixtureWeights& w, const WeibullParams& wp,
                           ModelVariant variant) {
  const double s = susceptible_survival(t, w.theta, wp, variant);
  // gamma1 + (1-gamma0-gamma1) s, arranged to be exact at s = 1 and s = 0
  return w.gamma1 * (1.0 - s) + (1.0 - w.gamma0) * s;
}

}  // namespace zicure
