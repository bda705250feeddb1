#pragma once

#include <Eigen/Dense>

namespace popp {

/// Number of singular values above rel_tol times the largest one.
int numerical_rank(const Eigen::MatrixXd& m, double rel_tol);

/// Ratio of extreme singular values; +inf for singular matrices.
double condition_number(const Eigen::MatrixXd& m);

/// Pointwise solves against a square frame matrix whose columns are frame
/// field values. Construction rejects matrices with condition number above
/// max_condition (SingularPoint); every solve is checked against the
/// residual bound ||M a - v|| <= residual_tol * ||v|| (InternalInconsistency).
class FrameSolver {
 public:
  FrameSolver(const Eigen::MatrixXd& frame, double max_condition, double residual_tol);

  Eigen::VectorXd solve(const Eigen::VectorXd& v) const;
  double abs_determinant() const { return abs_det_; }
  double condition() const { return condition_; }

 private:
  Eigen::MatrixXd frame_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
  double abs_det_;
  double condition_;
  double residual_tol_;
};

}  // namespace popp
