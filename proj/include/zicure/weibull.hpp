#pragma once

namespace zicure {

// Weibull baseline in the unconstrained log parametrization used everywhere
// in this library: shape alpha = exp(alpha_log), scale lambda = exp(lambda_log).
// Both derived parameters are positive by construction.
struct WeibullParams {
  double alpha_log = 0.0;
  double lambda_log = 0.0;

  double shape() const;  // alpha
  double scale() const;  // lambda
};

// F(t) = 1 - exp(-(t/lambda)^alpha). Throws std::domain_error for negative or
// non-finite t. (t/lambda)^alpha is evaluated in log space so extreme
// parameter proposals saturate to 1 instead of producing NaN.
double weibull_cdf(double t, const WeibullParams& p);

// f(t) = (alpha/lambda) (t/lambda)^(alpha-1) exp(-(t/lambda)^alpha) = dF/dt.
// t = 0 is allowed only for alpha >= 1; for alpha < 1 the density diverges
// there and a std::domain_error is thrown.
double weibull_pdf(double t, const WeibullParams& p);

// log f(t); returns -inf at t=0 when alpha > 1.
double weibull_log_pdf(double t, const WeibullParams& p);

}  // namespace zicure
