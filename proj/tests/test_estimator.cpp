#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "zicure/estimator.hpp"
#include "zicure/numdiff.hpp"
#include "zicure/simulator.hpp"

using namespace zicure;

namespace {

ParameterVector table_params() {
  ParameterVector p;
  p.coeffs.beta_kappa = {-1.4108, 0.3832, 0.5245};
  p.coeffs.beta_theta = {1.8575, -0.8011, -0.5504};
  p.weibull = {0.1337, 3.2746};
  return p;
}

SimulationDesign bank_design(std::uint64_t seed, std::size_t scale_divisor = 1) {
  SimulationDesign d;
  d.group_sizes = {1626 / scale_divisor, 1574 / scale_divisor, 938 / scale_divisor};
  d.group_covariates = {{1, 0}, {0, 1}, {0, 0}};
  d.true_params = table_params();
  d.censor_time = 35.657;
  d.seed = seed;
  return d;
}

}  // namespace

TEST_CASE("normal quantile") {
  CHECK(std::fabs(norm_quantile(0.975) - 1.959964) < 5e-7);  // 6-decimal anchor
  CHECK(norm_quantile(0.975) == doctest::Approx(1.9599639845400542).epsilon(1e-12));
  CHECK(norm_quantile(0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(norm_quantile(0.025) == doctest::Approx(-1.9599639845400542).epsilon(1e-12));
  CHECK(norm_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-9));
  CHECK_THROWS_AS(norm_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(norm_quantile(1.0), std::domain_error);
}

TEST_CASE("wald interval") {
  const auto [lo, hi] = wald_interval(0.0, 1.0, 0.95);
  CHECK(lo == doctest::Approx(-1.959964).epsilon(1e-6));
  CHECK(hi == doctest::Approx(1.959964).epsilon(1e-6));

  // published row beta_kappa0: -1.4108 +/- 1.959964 * 0.2132
  const auto [l2, h2] = wald_interval(-1.4108, 0.2132, 0.95);
  CHECK(std::fabs(l2 - (-1.82867)) < 1e-5);
  CHECK(std::fabs(h2 - (-0.99293)) < 1e-5);

  const auto [l3, h3] = wald_interval(4.2, 0.0, 0.95);
  CHECK(l3 == 4.2);
  CHECK(h3 == 4.2);

  CHECK_THROWS_AS(wald_interval(0.0, -1.0, 0.95), std::domain_error);
  CHECK_THROWS_AS(wald_interval(0.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("wald z ratios against the published tables") {
  CHECK(std::fabs(wald_z(-1.4108, 0.2132) - 6.6165) < 0.01);
  CHECK(std::fabs(wald_z(3.2746, 0.0872) - 37.5577) < 0.01);
  CHECK(wald_z(0.0, 2.0) == 0.0);
  CHECK_THROWS_AS(wald_z(1.0, 0.0), std::domain_error);
}

TEST_CASE("information criteria") {
  const auto [aic1, bic1] = information_criteria(-5035.84, 8, 4138);
  CHECK(std::fabs(aic1 - 10087.67) < 0.02);
  CHECK(std::fabs(bic1 - 10138.3) < 0.2);
  const auto [aic2, bic2] = information_criteria(-5037.44, 8, 4138);
  CHECK(std::fabs(aic2 - 10090.88) < 0.02);
  CHECK(std::fabs(bic2 - 10141.5) < 0.2);
  // log 1 = 0 wipes out the BIC penalty entirely
  const auto [aic0, bic0] = information_criteria(0.0, 1, 1);
  CHECK(aic0 == 2.0);
  CHECK(bic0 == 0.0);
}

TEST_CASE("finite-difference hessian is exact on a quadratic") {
  Eigen::MatrixXd A(3, 3);
  A << 4.0, 1.0, 0.5, 1.0, 3.0, -0.25, 0.5, -0.25, 2.0;
  auto grad = [&](const std::vector<double>& x) {
    Eigen::Vector3d v(x[0], x[1], x[2]);
    Eigen::Vector3d g = A * v;
    return std::vector<double>{g[0], g[1], g[2]};
  };
  const Eigen::MatrixXd H = fd_hessian(grad, {0.3, -1.2, 0.7});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(std::fabs(H(i, j) - A(i, j)) < 1e-6);
}

TEST_CASE("one-coefficient zero-mass model recovers the binomial standard error") {
  // m zeros among n rows, gamma0(b) = e^b / (1 + e^b + C) with fixed C; the
  // delta-method SE of gamma0-hat must match sqrt(g(1-g)/n)
  const double n = 10000.0, m = 1000.0;
  const double C = std::exp(0.5);
  auto loglik = [&](const std::vector<double>& b) {
    const double eb = std::exp(b[0]);
    const double g = eb / (1.0 + eb + C);
    return m * std::log(g) + (n - m) * std::log(1.0 - g);
  };
  // closed-form maximizer: gamma0-hat = m/n
  const double ghat = m / n;
  const double bhat = std::log(ghat * (1.0 + C) / (1.0 - ghat));
  auto grad = [&](const std::vector<double>& b) { return fd_gradient(loglik, b, 1e-6); };
  const Eigen::MatrixXd H = -fd_hessian(grad, {bhat});
  REQUIRE(H(0, 0) > 0.0);
  const double var_b = 1.0 / H(0, 0);
  const double dgdb = ghat * (1.0 - ghat);  // canonical-link jacobian
  const double se_gamma = dgdb * std::sqrt(var_b);
  const double closed_form = std::sqrt(ghat * (1.0 - ghat) / n);
  CHECK(se_gamma == doctest::Approx(closed_form).epsilon(0.02));
}

TEST_CASE("fit recovers simulation truth and is deterministic") {
  const SimulationDesign design = bank_design(314159);
  const Dataset data = simulate(design, ModelVariant::zipcr);

  FitConfig config;
  config.seed = 1;
  // tighter than the defaults so the first-order condition below is meaningful
  config.gradient_tolerance = 2e-7;
  config.objective_rel_tol = 1e-13;
  const FitResult fit1 = fit(data, ModelVariant::zipcr, config);
  REQUIRE(fit1.converged);
  CHECK(fit1.underflow_rows == 0);
  CHECK_FALSE(fit1.weibull_bound_hit);

  // truth within 3 reported standard errors, coordinate-wise
  const std::vector<double> truth = design.true_params.flatten();
  const std::vector<double> est = fit1.estimates.flatten();
  for (std::size_t j = 0; j < truth.size(); ++j) {
    REQUIRE(std::isfinite(fit1.std_errors[j]));
    CHECK(std::fabs(est[j] - truth[j]) < 3.0 * fit1.std_errors[j]);
    CHECK(fit1.ci_lower[j] <= est[j]);
    CHECK(est[j] <= fit1.ci_upper[j]);
  }

  // AIC/BIC identities, exactly
  const auto [aic, bic] = information_criteria(fit1.log_lik, fit1.n_params, fit1.n_obs);
  CHECK(fit1.aic == doctest::Approx(aic).epsilon(1e-12));
  CHECK(fit1.bic == doctest::Approx(bic).epsilon(1e-12));

  // covariance is symmetric positive definite
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fit1.covariance);
  CHECK(eig.eigenvalues().minCoeff() > 0.0);
  CHECK(fit1.hessian_condition > 1.0);

  // first-order condition at the reported optimum
  const std::vector<double> g = gradient(data, fit1.estimates, ModelVariant::zipcr);
  double gmax = 0.0;
  for (double v : g) gmax = std::max(gmax, std::fabs(v));
  CHECK(gmax < 1e-3 * std::max(1.0, std::fabs(fit1.log_lik) / data.n()));

  // bit-identical repeat
  const FitResult fit2 = fit(data, ModelVariant::zipcr, config);
  CHECK(fit2.estimates.flatten() == fit1.estimates.flatten());
  CHECK(fit2.log_lik == fit1.log_lik);
}

TEST_CASE("zicr variant also fits") {
  SimulationDesign design = bank_design(2718, 2);
  const Dataset data = simulate(design, ModelVariant::zicr);
  const FitResult res = fit(data, ModelVariant::zicr);
  REQUIRE(res.converged);
  const std::vector<double> truth = design.true_params.flatten();
  const std::vector<double> est = res.estimates.flatten();
  for (std::size_t j = 0; j < truth.size(); ++j) {
    CHECK(std::fabs(est[j] - truth[j]) < 4.0 * res.std_errors[j]);
  }
}

TEST_CASE("no zero rows drives the zero mass to the boundary") {
  // single covariate group (intercept only), no fraudsters in the data
  SimulationDesign design;
  design.group_sizes = {1200};
  design.group_covariates = {{}};
  design.true_params.coeffs.beta_kappa = {-30.0};  // essentially no zeros
  design.true_params.coeffs.beta_theta = {1.0};
  design.true_params.weibull = {0.2, 3.0};
  design.censor_time = 30.0;
  design.seed = 77;
  const Dataset data = simulate(design, ModelVariant::zipcr);
  REQUIRE(summarize(data).zero_rows == 0);

  const FitResult res = fit(data, ModelVariant::zipcr);
  const MixtureWeights w = link_weights(std::vector<double>{}, res.estimates.coeffs);
  CHECK(w.gamma0 < 0.005);
}

TEST_CASE("time rescaling shifts only the log-scale parameter") {
  SimulationDesign design = bank_design(424242, 2);
  const Dataset data = simulate(design, ModelVariant::zipcr);
  const double c = 7.0;
  Dataset scaled = data;
  for (auto& row : scaled.rows) row.time *= c;

  const FitResult base = fit(data, ModelVariant::zipcr);
  const FitResult resc = fit(scaled, ModelVariant::zipcr);
  REQUIRE(base.converged);
  REQUIRE(resc.converged);

  const std::vector<double> be = base.estimates.flatten();
  const std::vector<double> re = resc.estimates.flatten();
  const std::size_t lambda_idx = be.size() - 1;
  CHECK(std::fabs((re[lambda_idx] - be[lambda_idx]) - std::log(c)) < 0.02);
  for (std::size_t j = 0; j + 1 < be.size(); ++j) {
    CHECK(std::fabs(re[j] - be[j]) < 3.0 * base.std_errors[j]);
  }
}

TEST_CASE("fit rejects degenerate inputs") {
  Dataset tiny;
  tiny.rows.push_back({1.0, 1, {1.0}, {1.0}});
  CHECK_THROWS_AS(fit(tiny, ModelVariant::zipcr), std::invalid_argument);  // no censored row

  // rank-deficient design: duplicated covariate
  SimulationDesign design;
  design.group_sizes = {60, 60};
  design.group_covariates = {{1, 1}, {0, 0}};
  design.true_params.coeffs.beta_kappa = {-2.0, 0.3, 0.3};
  design.true_params.coeffs.beta_theta = {1.0, -0.4, -0.4};
  design.true_params.weibull = {0.0, 2.5};
  design.censor_time = 20.0;
  design.seed = 5;
  const Dataset collinear = simulate(design, ModelVariant::zipcr);
  CHECK_THROWS_AS(fit(collinear, ModelVariant::zipcr), std::invalid_argument);
}

TEST_CASE("exhausted restarts still return best-effort values") {
  const SimulationDesign design = bank_design(555, 4);
  const Dataset data = simulate(design, ModelVariant::zipcr);
  FitConfig config;
  config.max_iterations = 1;
  config.gradient_tolerance = 0.0;  // unreachable
  config.objective_rel_tol = 0.0;
  config.restarts = 2;
  const FitResult res = fit(data, ModelVariant::zipcr, config);
  CHECK_FALSE(res.converged);
  CHECK(std::isfinite(res.log_lik));
  for (double v : res.estimates.flatten()) CHECK(std::isfinite(v));
}

TEST_CASE("observed information rejects a non-maximum") {
  // zicr keeps S* free of the coefficients, so at beta_theta0 = log S*(t) a
  // censored row's log(e^b + S*) term is strictly convex in b: the negated
  // Hessian has a solidly negative eigenvalue there, far above FD noise.
  Dataset data;
  const double t = -std::log(0.01);  // unit Weibull: S*(t) = 0.01
  for (int i = 0; i < 50; ++i) data.rows.push_back({t, 0, {}, {}});
  data.rows.push_back({0.2, 1, {}, {}});

  ParameterVector away;
  away.coeffs.beta_kappa = {-5.0};
  away.coeffs.beta_theta = {std::log(0.01)};
  away.weibull = {0.0, 0.0};

  CHECK_THROWS_AS(observed_information(data, away, ModelVariant::zicr), NotPositiveDefinite);
  try {
    observed_information(data, away, ModelVariant::zicr);
  } catch (const NotPositiveDefinite& e) {
    CHECK(e.smallest_eigenvalue < 0.0);
  }
}

TEST_CASE("group outcomes reproduce both published tables") {
  ParameterVector zipcr = table_params();
  ParameterVector zicr;
  zicr.coeffs.beta_kappa = {-1.3894033, 0.3657269, 0.5130939};
  zicr.coeffs.beta_theta = {1.8784957, -0.8121232, -0.5585139};
  zicr.weibull = {0.1121479, 3.1692889};

  const std::vector<std::vector<double>> groups{{1, 0}, {0, 1}, {0, 0}};

  const auto out1 = group_outcomes(zipcr, groups);
  const double t4_g0[] = {0.084526, 0.080701, 0.031884};
  const double t4_g1[] = {0.679279, 0.723510, 0.837422};
  for (int g = 0; g < 3; ++g) {
    CHECK(std::fabs(out1[g].gamma0 - t4_g0[g]) < 1e-5);
    CHECK(std::fabs(out1[g].gamma1 - t4_g1[g]) < 1e-5);
    CHECK(out1[g].gamma0 + out1[g].gamma1 < 1.0);
  }

  const auto out2 = group_outcomes(zicr, groups);
  const double t5_g0[] = {0.084255, 0.080687, 0.031981};
  const double t5_g1[] = {0.681229, 0.725502, 0.839697};
  for (int g = 0; g < 3; ++g) {
    CHECK(std::fabs(out2[g].gamma0 - t5_g0[g]) < 1e-5);
    CHECK(std::fabs(out2[g].gamma1 - t5_g1[g]) < 1e-5);
  }

  // all-zero coefficients: every group at (1/3, 1/3)
  ParameterVector flat;
  flat.coeffs.beta_kappa = {0.0, 0.0, 0.0};
  flat.coeffs.beta_theta = {0.0, 0.0, 0.0};
  const auto out3 = group_outcomes(flat, groups);
  for (const auto& g : out3) {
    CHECK(g.gamma0 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(g.gamma1 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }

  // the FitResult overload honors the convergence precondition
  FitResult bad;
  bad.converged = false;
  CHECK_THROWS_AS(group_outcomes(bad, groups), std::invalid_argument);
}
