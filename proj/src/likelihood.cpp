#include "zicure/likelihood.hpp"

#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "zicure/numdiff.hpp"

namespace zicure {

RowLogLik log_likelihood_one(const Observation& obs, const ParameterVector& params,
                             ModelVariant variant) {
  const MixtureWeights w =
      link_weights(obs.covariates_zero, obs.covariates_cure, params.coeffs);

  // a susceptible mass rounded to <= 0 (a gamma saturated under an extreme
  // proposal) must short-circuit: the susceptible law is then unevaluable
  const double susceptible = 1.0 - w.gamma0 - w.gamma1;

  double log_value;
  if (obs.time == 0.0) {
    log_value = std::log(w.gamma0);
  } else if (obs.event == 1) {
    log_value = susceptible > 0.0
                    ? std::log(susceptible) +
                          log_susceptible_density(obs.time, w.theta, params.weibull, variant)
                    : -std::numeric_limits<double>::infinity();
  } else {
    log_value = susceptible > 0.0
                    ? std::log(w.gamma1 +
                               susceptible * susceptible_survival(obs.time, w.theta,
                                                                  params.weibull, variant))
                    : std::log(w.gamma1);
  }

  if (log_value == -std::numeric_limits<double>::infinity()) {
    return {kLogLikFloor, true};
  }
  return {log_value, false};
}

DataLogLik log_likelihood_serial(const Dataset& data, const ParameterVector& params,
                                 ModelVariant variant) {
  DataLogLik total;
  for (const auto& row : data.rows) {
    const RowLogLik r = log_likelihood_one(row, params, variant);
    total.value += r.value;
    total.underflow_rows += r.underflowed ? 1 : 0;
  }
  return total;
}

DataLogLik log_likelihood(const Dataset& data, const ParameterVector& params,
                          ModelVariant variant) {
#ifdef _OPENMP
  const long n = static_cast<long>(data.n());
  const int threads = omp_get_max_threads();
  std::vector<double> partial(threads, 0.0);
  std::vector<long> underflow(threads, 0);

#pragma omp parallel num_threads(threads)
  {
    const int id = omp_get_thread_num();
    double sum = 0.0;
    long uf = 0;
#pragma omp for schedule(static) nowait
    for (long i = 0; i < n; ++i) {
      const RowLogLik r = log_likelihood_one(data.rows[i], params, variant);
      sum += r.value;
      uf += r.underflowed ? 1 : 0;
    }
    partial[id] = sum;
    underflow[id] = uf;
  }

  // combine in thread-index order: deterministic for a fixed thread count
  DataLogLik total;
  for (int k = 0; k < threads; ++k) {
    total.value += partial[k];
    total.underflow_rows += underflow[k];
  }
  return total;
#else
  return log_likelihood_serial(data, params, variant);
#endif
}

std::vector<double> gradient(const Dataset& data, const ParameterVector& params,
                             ModelVariant variant) {
  const std::size_t q = params.coeffs.q();
  auto objective = [&](const std::vector<double>& v) {
    return log_likelihood(data, ParameterVector::from_flat(v, q), variant).value;
  };
  return fd_gradient(objective, params.flatten(), 1e-6);
}

}  // namespace zicure
