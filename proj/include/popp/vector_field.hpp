#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "popp/poly.hpp"

namespace popp {

/// Polynomial vector field sum_i components[i] * d/dx_i on R^n.
class VectorField {
 public:
  explicit VectorField(std::vector<Poly> components);
  static VectorField zero(std::size_t nvars);
  /// The coordinate field d/dx_index.
  static VectorField coordinate(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return components_.size(); }
  const std::vector<Poly>& components() const { return components_; }
  const Poly& operator[](std::size_t i) const { return components_[i]; }
  bool is_zero() const;

  Eigen::VectorXd eval(std::span<const double> q) const;

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  /// Multiplication by a function: (f X)^i = f X^i.
  friend VectorField operator*(const Poly& f, const VectorField& x);
  friend VectorField operator*(const Coefficient& c, const VectorField& x);
  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.components_ == b.components_;
  }

  std::string to_string(std::span<const std::string> names) const;

 private:
  std::vector<Poly> components_;
};

/// X(f) = sum_j X^j d_j f, exact.
Poly directional_derivative(const VectorField& x, const Poly& f);

/// [X, Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i), exact.
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// Lebesgue divergence sum_i d_i X^i.
Poly euclidean_divergence(const VectorField& x);

}  // namespace popp
