#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "popp/flag.hpp"
#include "popp/linalg.hpp"

namespace popp {

/// Coefficients b^l_{i1..ij} of the iterated horizontal brackets on the
/// layers D^j / D^{j-1}, j = 2..m, at one point.
///
/// level(j) is a k^j x (k_j - k_{j-1}) matrix: row r is the index tuple
/// whose base-k digits (most significant first) are i1..ij, column c is
/// the frame field k_{j-1} + c.
struct AdaptedConstants {
  Point q;
  GrowthVector flag_dims;
  std::size_t rank;
  std::vector<Eigen::MatrixXd> levels;  // levels[j-2] for j = 2..m

  const Eigen::MatrixXd& level(int j) const { return levels.at(static_cast<std::size_t>(j - 2)); }
  /// b^l for frame index l (0-based) and a 0-based index tuple.
  double b(int l, std::span<const int> tuple) const;
};

/// B_1 = Id_k and B_j^{hl} = sum over all ordered tuples of b^h b^l.
struct GramData {
  Point q;
  std::vector<Eigen::MatrixXd> blocks;  // blocks[j-1] = B_j
  std::vector<double> determinants;
};

/// Solves M(q) a = word(q) for every horizontal word of length 2..m and
/// keeps the layer-j components. Components above layer j must vanish
/// (InternalInconsistency otherwise).
AdaptedConstants adapted_constants(const AdaptedFrame& frame, const Point& q);
AdaptedConstants adapted_constants(const AdaptedFrame& frame, const Point& q,
                                   const FrameSolver& solver);

/// Throws InternalInconsistency if some B_j is not positive definite.
GramData gram_matrices(const AdaptedConstants& c);

/// (prod_j det B_j)^{-1/2}: Popp density against the coframe dual to the
/// adapted frame.
double popp_density_adapted(const GramData& g);

/// Popp density against dx^1..dx^n at q: the adapted density divided by
/// |det M(q)|. Independent of the adapted frame chosen.
double popp_density_coordinates(const AdaptedFrame& frame, const GramData& g, const Point& q);

/// Everything the volume computation produces at one point.
struct VolumeAtPoint {
  AdaptedConstants constants;
  GramData gram;
  double density_adapted;
  double density_coordinates;
  double frame_abs_determinant;
  double frame_condition;
};

VolumeAtPoint evaluate_volume(const AdaptedFrame& frame, const Point& q);

/// Norm of the class of `target` in D^j/D^{j-1} induced by pi_j, computed
/// as the minimum-norm solution of the linear system pi_j(a) = class
/// (SVD pseudoinverse). Does not use B_j. Throws ValidationError when the
/// target is not in D^j at q.
double quotient_norm_oracle(const AdaptedFrame& frame, const Point& q, int j,
                            const Eigen::VectorXd& target);

/// Gram matrix of the layer-j frame fields as classes in D^j/D^{j-1},
/// obtained from quotient_norm_oracle by polarization. Equals B_j^{-1}.
Eigen::MatrixXd oracle_gram(const AdaptedFrame& frame, const Point& q, int j);

/// sum_{i,j<=k} (c^0_ij)^2 where c^0_ij is the coefficient of the
/// transversal field X_0 in [X_i, X_j] in the frame (X_1..X_k, X_0).
/// Requires n = k + 1; throws NotBracketGenerating when it vanishes.
double contact_invariant(const SRStructure& s, const VectorField& transversal, const Point& q,
                         const FlagOptions& opts = {});

}  // namespace popp
