#include "zicure/estimator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "zicure/numdiff.hpp"
#include "zicure/optimizer.hpp"
#include "zicure/simulator.hpp"

namespace zicure {

NotPositiveDefinite::NotPositiveDefinite(double eig)
    : std::runtime_error("observed information is not positive definite (smallest eigenvalue " +
                         std::to_string(eig) + ")"),
      smallest_eigenvalue(eig) {}

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("norm_quantile: p must be in (0,1)");
  }
  // Acklam's rational approximation ...
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425, phigh = 1.0 - plow;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= phigh) {
    const double q = p - 0.5, r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // ... followed by one Halley step against erfc for ~1e-15 accuracy
  const double err = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
  const double u = err * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
  return x - u / (1.0 + x * u / 2.0);
}

std::pair<double, double> wald_interval(double est, double se, double level) {
  if (se < 0.0) throw std::domain_error("wald_interval: se must be nonnegative");
  if (!(level > 0.0 && level < 1.0)) {
    throw std::domain_error("wald_interval: level must be in (0,1)");
  }
  const double z = norm_quantile(1.0 - (1.0 - level) / 2.0);
  return {est - z * se, est + z * se};
}

double wald_z(double est, double se) {
  if (!(se > 0.0)) throw std::domain_error("wald_z: se must be positive");
  return std::fabs(est) / se;
}

std::pair<double, double> information_criteria(double log_lik, std::size_t k, std::size_t n) {
  const double aic = -2.0 * log_lik + 2.0 * static_cast<double>(k);
  const double bic = -2.0 * log_lik + static_cast<double>(k) * std::log(static_cast<double>(n));
  return {aic, bic};
}

Eigen::MatrixXd observed_information(const Dataset& data, const ParameterVector& params,
                                     ModelVariant variant) {
  const std::size_t q = params.coeffs.q();
  auto grad = [&](const std::vector<double>& v) {
    return gradient(data, ParameterVector::from_flat(v, q), variant);
  };
  Eigen::MatrixXd info = -fd_hessian(grad, params.flatten(), 1e-4);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(info);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw NotPositiveDefinite(eig.eigenvalues().minCoeff());
  }
  return info;
}

namespace {

void check_design_rank(const Dataset& data) {
  const auto n = static_cast<Eigen::Index>(data.n());
  const auto q = static_cast<Eigen::Index>(data.q());
  auto rank_of = [&](bool cure_side) {
    Eigen::MatrixXd X(n, q + 1);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& x =
          cure_side ? data.rows[i].covariates_cure : data.rows[i].covariates_zero;
      X(i, 0) = 1.0;
      for (Eigen::Index j = 0; j < q; ++j) X(i, j + 1) = x[j];
    }
    return Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(X).rank();
  };
  if (rank_of(false) < q + 1) {
    throw std::invalid_argument("fit: zero-inflation design matrix is rank deficient");
  }
  if (rank_of(true) < q + 1) {
    throw std::invalid_argument("fit: cure design matrix is rank deficient");
  }
}

ParameterVector default_init(const Dataset& data) {
  const DatasetSummary s = summarize(data);
  const double n = static_cast<double>(s.n);
  // continuity-corrected fractions keep the logit finite on degenerate data
  const double zfrac = (static_cast<double>(s.zero_rows) + 0.5) / (n + 1.0);
  const double cfrac = (static_cast<double>(s.censored_rows) + 0.5) / (n + 1.0);

  std::vector<double> positive;
  positive.reserve(data.n());
  for (const auto& row : data.rows)
    if (row.time > 0.0) positive.push_back(row.time);
  double median = 1.0;
  if (!positive.empty()) {
    const std::size_t mid = positive.size() / 2;
    std::nth_element(positive.begin(), positive.begin() + mid, positive.end());
    median = positive[mid];
  }

  const std::size_t q = data.q();
  ParameterVector p;
  p.coeffs.beta_kappa.assign(q + 1, 0.0);
  p.coeffs.beta_theta.assign(q + 1, 0.0);
  p.coeffs.beta_kappa[0] = std::log(zfrac / (1.0 - zfrac));
  p.coeffs.beta_theta[0] = std::log(cfrac / (1.0 - cfrac));
  p.weibull.alpha_log = 0.0;
  p.weibull.lambda_log = std::log(median);
  return p;
}

}  // namespace

FitResult fit(const Dataset& data, ModelVariant variant, const FitConfig& config,
              const ParameterVector* init) {
  if (data.n() == 0) throw std::invalid_argument("fit: empty dataset");
  const DatasetSummary summary = summarize(data);
  if (summary.events_positive == 0) {
    throw std::invalid_argument("fit: needs at least one uncensored positive-time row");
  }
  if (summary.censored_rows == 0) {
    throw std::invalid_argument("fit: needs at least one censored row");
  }
  check_design_rank(data);

  const std::size_t q = data.q();
  auto objective = [&](const std::vector<double>& v) {
    return log_likelihood(data, ParameterVector::from_flat(v, q), variant).value;
  };
  auto obj_gradient = [&](const std::vector<double>& v) {
    return gradient(data, ParameterVector::from_flat(v, q), variant);
  };

  const std::size_t p = 2 * (q + 1) + 2;
  const double bound = config.weibull_bound;
  auto clamp = [p, bound](std::vector<double>& v) {
    bool hit = false;
    for (std::size_t j = p - 2; j < p; ++j) {
      if (v[j] > bound) {
        v[j] = bound;
        hit = true;
      } else if (v[j] < -bound) {
        v[j] = -bound;
        hit = true;
      }
    }
    return hit;
  };

  BfgsOptions opts;
  opts.max_iterations = config.max_iterations;
  opts.gradient_tolerance = config.gradient_tolerance;
  opts.objective_rel_tol = config.objective_rel_tol;

  const std::vector<double> x0 = init ? init->flatten() : default_init(data).flatten();
  BfgsResult best = bfgs_maximize(objective, obj_gradient, x0, opts, clamp);
  int total_iterations = best.iterations;

  if (!best.converged && config.restarts > 0) {
    std::mt19937_64 rng(mix_seed(config.seed, 0x666974 /* "fit" */));
    std::uniform_real_distribution<double> jitter(-0.5, 0.5);
    for (int r = 0; r < config.restarts && !best.converged; ++r) {
      std::vector<double> xr = x0;
      for (double& v : xr) v += jitter(rng);
      BfgsResult attempt = bfgs_maximize(objective, obj_gradient, xr, opts, clamp);
      total_iterations += attempt.iterations;
      if ((attempt.converged && !best.converged) ||
          (attempt.converged == best.converged && attempt.value > best.value)) {
        best = attempt;
      }
    }
  }

  FitResult result;
  result.variant = variant;
  result.n_obs = data.n();
  result.n_params = p;
  result.estimates = ParameterVector::from_flat(best.x, q);
  result.converged = best.converged;
  result.iterations = total_iterations;
  result.weibull_bound_hit = best.clamp_hit;
  result.confidence_level = config.confidence_level;

  const DataLogLik ll = log_likelihood(data, result.estimates, variant);
  result.log_lik = ll.value;
  result.underflow_rows = ll.underflow_rows;
  std::tie(result.aic, result.bic) = information_criteria(ll.value, p, data.n());

  const double nan = std::numeric_limits<double>::quiet_NaN();
  result.std_errors.assign(p, nan);
  result.ci_lower.assign(p, nan);
  result.ci_upper.assign(p, nan);
  result.z_ratios.assign(p, nan);
  result.hessian_condition = nan;
  try {
    const Eigen::MatrixXd info = observed_information(data, result.estimates, variant);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(info);
    result.hessian_condition = eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();
    result.covariance = eig.eigenvectors() *
                        eig.eigenvalues().cwiseInverse().asDiagonal() *
                        eig.eigenvectors().transpose();
    const std::vector<double> est = best.x;
    for (std::size_t j = 0; j < p; ++j) {
      const double se = std::sqrt(result.covariance(static_cast<Eigen::Index>(j),
                                                    static_cast<Eigen::Index>(j)));
      result.std_errors[j] = se;
      std::tie(result.ci_lower[j], result.ci_upper[j]) =
          wald_interval(est[j], se, config.confidence_level);
      result.z_ratios[j] = se > 0.0 ? std::fabs(est[j]) / se : 0.0;
    }
  } catch (const NotPositiveDefinite&) {
    // leave the uncertainty columns as NaN; estimates and likelihood stand
  }
  return result;
}

std::vector<GroupOutcome> group_outcomes(const ParameterVector& params,
                                         const std::vector<std::vector<double>>& groups) {
  std::vector<GroupOutcome> out;
  out.reserve(groups.size());
  for (const auto& x : groups) {
    const MixtureWeights w = link_weights(x, params.coeffs);
    out.push_back({x, w.gamma0, w.gamma1});
  }
  return out;
}

std::vector<GroupOutcome> group_outcomes(const FitResult& fit,
                                         const std::vector<std::vector<double>>& groups) {
  if (!fit.converged) {
    throw std::invalid_argument("group_outcomes: fit did not converge");
  }
  return group_outcomes(fit.estimates, groups);
}

}  // namespace zicure
