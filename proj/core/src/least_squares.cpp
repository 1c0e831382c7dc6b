#include "least_squares.hpp"

#include <string>

#include "lfpc/error.hpp"

namespace lfpc::detail {

LeastSquares solve_least_squares(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  const auto n = x.rows();
  const auto p = x.cols();
  if (n < p) {
    throw EstimationError("design has " + std::to_string(n) + " rows for " + std::to_string(p) +
                          " coefficients");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) {
    throw EstimationError("rank-deficient design (rank " + std::to_string(qr.rank()) + " of " +
                          std::to_string(p) + "): collinear or zero-variance predictors");
  }
  LeastSquares out;
  out.coef = qr.solve(y);
  out.residuals = y - x * out.coef;
  out.sse = out.residuals.squaredNorm();

  // (X'X)^-1 = P R^-1 R^-T P'
  const Eigen::MatrixXd r =
      qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv =
      r.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd inner = r_inv * r_inv.transpose();
  const auto& perm = qr.colsPermutation();
  out.xtx_inverse = perm * inner * perm.transpose();
  return out;
}

}  // namespace lfpc::detail
