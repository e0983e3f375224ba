#include "zicure/numdiff.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zicure {

std::vector<double> fd_gradient(const ScalarObjective& f, std::vector<double> x, double h_rel) {
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    double h = h_rel * std::max(1.0, std::fabs(x[j]));
    const double xj = x[j];
    for (int attempt = 0;; ++attempt) {
      x[j] = xj + h;
      const double fp = f(x);
      x[j] = xj - h;
      const double fm = f(x);
      x[j] = xj;
      if (std::isfinite(fp) && std::isfinite(fm)) {
        g[j] = (fp - fm) / (2.0 * h);
        break;
      }
      if (attempt == 1) {
        throw std::runtime_error(
            "fd_gradient: non-finite objective at probe for coordinate " + std::to_string(j));
      }
      h /= 10.0;
    }
  }
  return g;
}

Eigen::MatrixXd fd_hessian(const VectorGradient& grad, const std::vector<double>& x,
                           double h_rel) {
  const auto p = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd H(p, p);
  std::vector<double> probe = x;
  for (Eigen::Index j = 0; j < p; ++j) {
    const double h = h_rel * std::max(1.0, std::fabs(x[j]));
    probe[j] = x[j] + h;
    const std::vector<double> gp = grad(probe);
    probe[j] = x[j] - h;
    const std::vector<double> gm = grad(probe);
    probe[j] = x[j];
    for (Eigen::Index i = 0; i < p; ++i) {
      H(i, j) = (gp[i] - gm[i]) / (2.0 * h);
    }
  }
  return 0.5 * (H + H.transpose());
}

}  // namespace zicure
