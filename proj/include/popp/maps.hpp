#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "popp/flag.hpp"
#include "popp/poly.hpp"
#include "popp/structure.hpp"
#include "popp/vector_field.hpp"

namespace popp {

/// Polynomial diffeomorphism of R^n with a polynomial inverse.
struct PolyMap {
  std::string name;
  std::vector<Poly> forward;
  std::vector<Poly> inverse;

  std::size_t dimension() const { return forward.size(); }
  Point apply(const Point& q) const;
  Point apply_inverse(const Point& q) const;
  /// Jacobian matrix of the forward map at q.
  Eigen::MatrixXd jacobian(const Point& q) const;
};

/// How make_poly_map certified forward o inverse = id.
enum class InverseCheck { exact, sampled };

/// Builds a map and verifies forward o inverse = id: exactly by polynomial
/// composition, or at 50 pseudo-random points to 1e-10 when the
/// composition exceeds the term cap. Throws ValidationError otherwise.
PolyMap make_poly_map(std::string name, std::vector<Poly> forward, std::vector<Poly> inverse,
                      InverseCheck* how = nullptr);

/// Same map with forward and inverse swapped.
PolyMap inverse_map(const PolyMap& m);

/// (phi_* X)(p) = D phi(phi^{-1} p) X(phi^{-1} p), exact.
VectorField pushforward_field(const PolyMap& m, const VectorField& x);

struct IsometryPoint {
  Point q;
  Point image;
  /// max_i |D phi X_i(q) - proj onto D_{phi(q)}| / |D phi X_i(q)|
  double span_residual;
  /// Gram matrix of the pushed fields in the orthonormal frame at phi(q).
  Eigen::MatrixXd gram;
  double gram_error;  // max entry of |gram - Id|
  std::optional<std::string> error;
};

struct IsometryReport {
  std::vector<IsometryPoint> points;
  double max_span_residual = 0.0;
  double max_gram_error = 0.0;
  bool preserves_distribution = false;  // condition (i)
  bool preserves_metric = false;        // condition (ii)
  bool passed = false;
};

IsometryReport is_isometry(const PolyMap& m, const SRStructure& s, const std::vector<Point>& sample,
                           double tol, const FlagOptions& opts = {});

struct VolumePoint {
  Point q;
  Point image;
  double density_at_q = 0.0;
  double density_at_image = 0.0;
  double jacobian_abs_det = 0.0;
  /// |rho(phi q) |det D phi(q)| - rho(q)| / rho(q)
  double relative_error = 0.0;
  std::optional<std::string> error;
};

struct VolumeReport {
  std::vector<VolumePoint> points;
  double max_relative_error = 0.0;
  /// rho(phi q) |det D phi(q)| / rho(q) at the first sample, for diagnostics.
  double first_ratio = 0.0;
  bool passed = false;
};

/// Pullback test for the Popp volume rho dx, optionally scaled by a
/// polynomial weight w (testing the volume w rho dx instead).
VolumeReport check_volume_preserving(const PolyMap& m, const SRStructure& s,
                                     const std::vector<Point>& sample, double tol,
                                     const FlagOptions& opts = {},
                                     const Poly* weight = nullptr);

}  // namespace popp
