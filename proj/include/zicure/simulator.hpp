#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "zicure/cure_model.hpp"
#include "zicure/dataset.hpp"

namespace zicure {

// Synthetic-portfolio design: fixed covariate patterns with per-pattern
// counts, generating parameters, and a single administrative censoring time.
struct SimulationDesign {
  std::vector<std::size_t> group_sizes;
  std::vector<std::vector<double>> group_covariates;
  ParameterVector true_params;
  double censor_time = 1.0;
  std::uint64_t seed = 1;
};

// Per subject: class ~ (gamma0, gamma1, 1-gamma0-gamma1). Zero class yields
// (0, event); cured yields (censor_time, censored); susceptible draws the
// lifetime by inverse transform of the susceptible survival (plain Weibull
// for zicr) and censors administratively. Each group runs on its own RNG
// stream derived from (seed, group index), so output is reproducible and
// independent of scheduling.
Dataset simulate(const SimulationDesign& design, ModelVariant variant);

// Solves S*(t) = u for the promotion susceptible survival:
//   F = -log(e^{-theta} + u (1 - e^{-theta})) / theta,
//   t = lambda (-log(1-F))^{1/alpha}.
// Throws std::domain_error unless u in (0,1) and theta > 0.
double inverse_susceptible(double u, double theta, const WeibullParams& wp);

// splitmix64 of (seed, stream) used to derive per-group generator seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Uniform draw strictly inside (0,1) built from the top 53 bits.
double unit_open(std::mt19937_64& rng);

}  // namespace zicure
