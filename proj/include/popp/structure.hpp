#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "popp/compiled.hpp"
#include "popp/vector_field.hpp"

namespace popp {

using Point = Eigen::VectorXd;

/// Sub-Riemannian structure on R^n given by k polynomial fields declared
/// orthonormal. Requires n >= 3 and 1 <= k < n.
class SRStructure {
 public:
  SRStructure(std::string name, std::vector<VectorField> horizontal,
              std::vector<std::string> variable_names = {});

  const std::string& name() const { return name_; }
  std::size_t dimension() const { return n_; }
  std::size_t rank() const { return horizontal_.size(); }
  const std::vector<VectorField>& horizontal() const { return horizontal_; }
  const VectorField& field(std::size_t i) const { return horizontal_.at(i); }
  const std::vector<std::string>& variable_names() const { return names_; }

  /// n x k matrix of horizontal field values at q.
  Eigen::MatrixXd horizontal_values(const Point& q) const;

  /// Throws RankDeficientHorizontal if the horizontal values at q are
  /// numerically dependent (relative singular value threshold rel_tol).
  void check_horizontal(const Point& q, double rel_tol) const;

  void check_point(const Point& q) const;

 private:
  std::string name_;
  std::size_t n_;
  std::vector<VectorField> horizontal_;
  std::vector<std::string> names_;
  std::vector<CompiledField> compiled_;
};

std::string format_point(const Point& q);

}  // namespace popp
