#pragma once

#include <vector>

#include "zicure/cure_model.hpp"
#include "zicure/dataset.hpp"

namespace zicure {

// Per-row floor applied when a likelihood contribution underflows to zero.
// Keeps the objective finite for the quasi-Newton optimizer.
inline constexpr double kLogLikFloor = -1e10;

struct RowLogLik {
  double value = 0.0;
  bool underflowed = false;
};

struct DataLogLik {
  double value = 0.0;
  long underflow_rows = 0;
};

// Log of the observation's likelihood contribution. Three branches:
//   time == 0           -> log gamma0            (regardless of the event flag)
//   time > 0, event = 1 -> log((1-gamma0-gamma1) f*(t))
//   time > 0, event = 0 -> log(gamma1 + (1-gamma0-gamma1) S*(t))
// A branch that underflows to zero yields kLogLikFloor with the flag set.
RowLogLik log_likelihood_one(const Observation& obs, const ParameterVector& params,
                             ModelVariant variant);

// Serial reference: plain left-to-right sum over rows.
DataLogLik log_likelihood_serial(const Dataset& data, const ParameterVector& params,
                                 ModelVariant variant);

// OpenMP kernel. Rows are statically partitioned across threads and the
// per-thread partial sums are reduced in thread order, so the result is
// deterministic for a fixed thread count. Agrees with the serial reference to
// reduction-order rounding (tests use 1e-10 relative).
DataLogLik log_likelihood(const Dataset& data, const ParameterVector& params,
                          ModelVariant variant);

// Central finite differences of log_likelihood with per-coordinate step
// h_j = 1e-6 max(1, |param_j|); layout matches ParameterVector::flatten().
std::vector<double> gradient(const Dataset& data, const ParameterVector& params,
                             ModelVariant variant);

}  // namespace zicure
