#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "popp/poly.hpp"
#include "popp/vector_field.hpp"

namespace popp {

/// Double-precision snapshot of a Poly for pointwise numerical kernels.
/// Each coefficient is rounded once; evaluation is plain floating point.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Poly& p);

  double eval(std::span<const double> q) const;

 private:
  std::size_t nvars_ = 0;
  std::uint32_t max_degree_ = 0;
  std::vector<double> coeffs_;
  std::vector<std::uint32_t> exponents_;  // row-major, nvars_ per term
};

class CompiledField {
 public:
  CompiledField() = default;
  explicit CompiledField(const VectorField& x);

  std::size_t nvars() const { return components_.size(); }
  Eigen::VectorXd eval(std::span<const double> q) const;
  void eval_into(std::span<const double> q, Eigen::Ref<Eigen::VectorXd> out) const;

 private:
  std::vector<CompiledPoly> components_;
};

inline std::span<const double> as_span(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

}  // namespace popp
