#include "zicure/weibull.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace zicure {

double WeibullParams::shape() const { return std::exp(alpha_log); }
double WeibullParams::scale() const { return std::exp(lambda_log); }

namespace {

void check_time(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::domain_error("weibull: time must be finite and nonnegative");
  }
}

}  // namespace

double weibull_cdf(double t, const WeibullParams& p) {
  check_time(t);
  if (t == 0.0) return 0.0;
  const double alpha = std::exp(p.alpha_log);
  // (t/lambda)^alpha via logs; overflow saturates to F = 1 instead of NaN.
  const double z = std::exp(alpha * (std::log(t) - p.lambda_log));
  return -std::expm1(-z);
}

double weibull_log_pdf(double t, const WeibullParams& p) {
  check_time(t);
  const double alpha = std::exp(p.alpha_log);
  if (t == 0.0) {
    if (alpha > 1.0) return -std::numeric_limits<double>::infinity();
    if (alpha == 1.0) return -p.lambda_log;
    throw std::domain_error("weibull: density singular at t=0 for shape < 1");
  }
  const double u = std::log(t) - p.lambda_log;
  return p.alpha_log - p.lambda_log + (alpha - 1.0) * u - std::exp(alpha * u);
}

double weibull_pdf(double t, const WeibullParams& p) {
  return std::exp(weibull_log_pdf(t, p));
}

}  // namespace zicure
