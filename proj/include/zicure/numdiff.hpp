#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

namespace zicure {

using ScalarObjective = std::function<double(const std::vector<double>&)>;
using VectorGradient = std::function<std::vector<double>(const std::vector<double>&)>;

// Central-difference gradient, step h_j = h_rel max(1, |x_j|). A non-finite
// objective at a probe point shrinks the step once (h/10); if a probe is
// still non-finite, throws std::runtime_error naming the coordinate.
std::vector<double> fd_gradient(const ScalarObjective& f, std::vector<double> x,
                                double h_rel = 1e-6);

// Central differences of a gradient, step h_j = h_rel max(1, |x_j|),
// symmetrized as (H + H')/2.
Eigen::MatrixXd fd_hessian(const VectorGradient& grad, const std::vector<double>& x,
                           double h_rel = 1e-4);

}  // namespace zicure
