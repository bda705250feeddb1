#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "popp/flag.hpp"
#include "popp/structure.hpp"
#include "popp/volume.hpp"

namespace popp {

/// c^l_ij with [X_i, X_j] = sum_l c^l_ij X_l over the full adapted frame.
/// Indices are 0-based frame indices.
class StructureConstants {
 public:
  explicit StructureConstants(std::size_t n) : n_(n), data_(n * n * n, 0.0) {}
  std::size_t dimension() const { return n_; }
  double operator()(std::size_t i, std::size_t j, std::size_t l) const { return data_[(i * n_ + j) * n_ + l]; }
  double& at(std::size_t i, std::size_t j, std::size_t l) { return data_[(i * n_ + j) * n_ + l]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

struct SublaplacianOptions {
  /// Base finite-difference step, scaled by |q| + 1.
  double fd_step = 1e-4;
  /// Richardson estimates at h and h/2 must agree to this (relative to
  /// max(1, |value|)) or a warning is attached.
  double fd_agreement = 1e-6;
};

struct DivergenceResult {
  double value;
  /// |R(h) - R(h/2)| between the two Richardson estimates of the trace term.
  double crosscheck;
  bool accurate;
};

/// Coefficients of Delta = sum_i X_i^2 + a_i X_i for the Popp volume.
struct SublaplacianData {
  Point q;
  StructureConstants constants;
  std::vector<double> divergences;  // div X_i, i < k
  std::vector<double> coefficients; // a_i = div X_i
  std::vector<std::string> warnings;
};

/// Axis-aligned box for quadrature; lower/upper per coordinate.
struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Popp divergence and sub-Laplacian computations for one adapted frame.
///
/// Construction computes the exact brackets of all frame field pairs once;
/// every query is then pointwise numerical work with the frame held fixed,
/// so queries are valid wherever the frame stays adapted.
class SublaplacianEngine {
 public:
  explicit SublaplacianEngine(AdaptedFrame frame, SublaplacianOptions opts = {});

  const AdaptedFrame& frame() const { return frame_; }
  const SublaplacianOptions& options() const { return opts_; }

  StructureConstants structure_constants(const Point& q) const;

  /// div X_i = -(1/2 sum_j Tr(B_j^{-1} X_i(B_j)) + sum_l c^l_il), with
  /// X_i(B_j) from central differences along the straight line through q
  /// in direction X_i(q) plus one Richardson step.
  DivergenceResult frame_divergence(const Point& q, std::size_t i) const;
  DivergenceResult frame_divergence(const Point& q, std::size_t i,
                                    const StructureConstants& c) const;

  SublaplacianData coefficients(const Point& q) const;

  /// sum_i X_i(X_i f)(q) + a_i X_i(f)(q).
  double apply(const Poly& f, const Point& q) const;

  /// Midpoint-rule values of (int f Delta g rho dx, -int <grad f, grad g> rho dx)
  /// over the box with `cells` cells per axis, rho the coordinate Popp
  /// density.
  std::pair<double, double> symmetry_check(const Poly& f, const Poly& g, const Box& box,
                                           int cells) const;

  /// Trace term sum_j Tr(B_j(q)^{-1} B_j(p)) used by the divergence.
  double trace_against(const std::vector<Eigen::MatrixXd>& inverse_at_q, const Point& p) const;

 private:
  std::size_t k_;
  AdaptedFrame frame_;
  SublaplacianOptions opts_;
  std::vector<CompiledField> pair_brackets_;  // [F_i, F_j], i < j, row-major upper triangle
};

StructureConstants structure_constants(const AdaptedFrame& frame, const Point& q);

/// (X_1(f)(q), ..., X_k(f)(q)), exact directional derivatives.
std::vector<double> gradient(const SRStructure& s, const Poly& f, const Point& q);

DivergenceResult frame_divergence(const SRStructure& s, const AdaptedFrame& frame, const Point& q,
                                  std::size_t i, double fd_step = 1e-4);

SublaplacianData sublaplacian_coeffs(const SRStructure& s, const AdaptedFrame& frame,
                                     const Point& q, double fd_step = 1e-4);

double apply_sublaplacian(const SRStructure& s, const AdaptedFrame& frame, const Poly& f,
                          const Point& q, double fd_step = 1e-4);

/// div_{f mu} X = div_mu X + X(log f).
inline double mu_divergence_shift(double base_div, double logf_derivative) {
  return base_div + logf_derivative;
}

std::pair<double, double> symmetry_check(const SRStructure& s, const AdaptedFrame& frame,
                                         const Poly& f, const Poly& g, const Box& box, int cells,
                                         double fd_step = 1e-4);

/// Pairwise (cascade) summation; deterministic for a given input order.
double pairwise_sum(std::span<const double> values);

}  // namespace popp
