#pragma once

#include <Eigen/Dense>

namespace lfpc::detail {

struct LeastSquares {
  Eigen::VectorXd coef;
  Eigen::MatrixXd xtx_inverse;  // (X'X)^-1
  Eigen::VectorXd residuals;
  double sse = 0.0;
};

// Full-rank least squares via column-pivoted QR. Throws EstimationError when
// the design is rank deficient.
LeastSquares solve_least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y);

}  // namespace lfpc::detail
