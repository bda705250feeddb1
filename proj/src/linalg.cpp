#include "popp/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "popp/errors.hpp"

namespace popp {

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > rel_tol * s[0]) ++r;
  }
  return r;
}

double condition_number(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  double smin = s[s.size() - 1];
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / smin;
}

FrameSolver::FrameSolver(const Eigen::MatrixXd& frame, double max_condition, double residual_tol)
    : frame_(frame), qr_(frame), residual_tol_(residual_tol) {
  if (frame.rows() != frame.cols()) throw ValidationError("frame matrix must be square");
  condition_ = condition_number(frame);
  if (!(condition_ <= max_condition)) {
    std::ostringstream os;
    os << "frame matrix ill-conditioned (condition number " << condition_ << " > "
       << max_condition << ")";
    throw SingularPoint(os.str());
  }
  abs_det_ = qr_.absDeterminant();
}

Eigen::VectorXd FrameSolver::solve(const Eigen::VectorXd& v) const {
  Eigen::VectorXd a = qr_.solve(v);
  double residual = (frame_ * a - v).norm();
  if (!(residual <= residual_tol_ * v.norm())) {
    std::ostringstream os;
    os << "frame solve residual " << residual << " exceeds " << residual_tol_ << " * |v| = "
       << residual_tol_ * v.norm();
    throw InternalInconsistency(os.str());
  }
  return a;
}

}  // namespace popp
