#include "zicure/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace zicure {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over the combined state
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double inverse_susceptible(double u, double theta, const WeibullParams& wp) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("inverse_susceptible: u must be in (0,1)");
  }
  if (!(theta > 0.0)) {
    throw std::domain_error("inverse_susceptible: theta must be positive");
  }
  double F;
  if (theta < 1e-8) {
    F = 1.0 - u;  // S* -> 1 - F limit
  } else {
    // e^{-theta} + u (1 - e^{-theta})
    const double a = std::exp(-theta) - u * std::expm1(-theta);
    F = -std::log(a) / theta;
  }
  const double alpha = std::exp(wp.alpha_log);
  return std::exp(wp.lambda_log) * std::pow(-std::log1p(-F), 1.0 / alpha);
}

Dataset simulate(const SimulationDesign& design, ModelVariant variant) {
  const std::size_t groups = design.group_sizes.size();
  if (groups == 0 || design.group_covariates.size() != groups) {
    throw std::invalid_argument("simulate: group_sizes and group_covariates must align");
  }
  if (!(design.censor_time > 0.0)) {
    throw std::invalid_argument("simulate: censor_time must be positive");
  }
  const std::size_t q = design.true_params.coeffs.q();
  std::vector<std::size_t> offsets(groups + 1, 0);
  for (std::size_t g = 0; g < groups; ++g) {
    if (design.group_sizes[g] == 0) {
      throw std::invalid_argument("simulate: group sizes must be >= 1");
    }
    if (design.group_covariates[g].size() != q) {
      throw std::invalid_argument("simulate: covariate pattern length must match parameters");
    }
    offsets[g + 1] = offsets[g] + design.group_sizes[g];
  }

  Dataset data;
  data.rows.resize(offsets.back());
  const WeibullParams& wp = design.true_params.weibull;
  const double cutoff = design.censor_time;

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long gs = 0; gs < static_cast<long>(groups); ++gs) {
    const auto g = static_cast<std::size_t>(gs);
    const std::vector<double>& x = design.group_covariates[g];
    const MixtureWeights w = link_weights(x, design.true_params.coeffs);
    const double alpha = std::exp(wp.alpha_log);
    std::mt19937_64 rng(mix_seed(design.seed, g));
    for (std::size_t i = offsets[g]; i < offsets[g + 1]; ++i) {
      Observation& row = data.rows[i];
      row.covariates_zero = x;
      row.covariates_cure = x;
      const double u = unit_open(rng);
      if (u < w.gamma0) {
        row.time = 0.0;
        row.event = 1;
      } else if (u < w.gamma0 + w.gamma1) {
        row.time = cutoff;
        row.event = 0;
      } else {
        const double v = unit_open(rng);
        const double t = variant == ModelVariant::zipcr
                             ? inverse_susceptible(v, w.theta, wp)
                             : std::exp(wp.lambda_log) * std::pow(-std::log(v), 1.0 / alpha);
        if (t <= cutoff) {
          row.time = t;
          row.event = 1;
        } else {
          row.time = cutoff;
          row.event = 0;
        }
      }
    }
  }
  return data;
}

}  // namespace zicure
