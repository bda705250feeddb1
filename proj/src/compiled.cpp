#include "popp/compiled.hpp"

#include <array>

#include "popp/errors.hpp"

namespace popp {

CompiledPoly::CompiledPoly(const Poly& p) : nvars_(p.nvars()), max_degree_(p.max_variable_degree()) {
  coeffs_.reserve(p.term_count());
  exponents_.reserve(p.term_count() * nvars_);
  for (const auto& [e, c] : p.terms()) {
    coeffs_.push_back(c.to_double());
    exponents_.insert(exponents_.end(), e.begin(), e.end());
  }
}

double CompiledPoly::eval(std::span<const double> q) const {
  if (q.size() != nvars_) throw ValidationError("evaluation point has wrong dimension");
  if (coeffs_.empty()) return 0.0;
  // Small power table on the stack for the common low-degree case.
  constexpr std::size_t kStack = 64;
  std::size_t stride = max_degree_ + 1;
  std::array<double, kStack> stack_pow{};
  std::vector<double> heap_pow;
  double* pow = stack_pow.data();
  if (stride * nvars_ > kStack) {
    heap_pow.resize(stride * nvars_);
    pow = heap_pow.data();
  }
  for (std::size_t i = 0; i < nvars_; ++i) {
    double* row = pow + i * stride;
    row[0] = 1.0;
    for (std::size_t d = 1; d < stride; ++d) row[d] = row[d - 1] * q[i];
  }
  double sum = 0.0;
  const std::uint32_t* e = exponents_.data();
  for (double c : coeffs_) {
    double m = c;
    for (std::size_t i = 0; i < nvars_; ++i, ++e) {
      if (*e != 0) m *= pow[i * stride + *e];
    }
    sum += m;
  }
  return sum;
}

CompiledField::CompiledField(const VectorField& x) {
  components_.reserve(x.nvars());
  for (const auto& c : x.components()) components_.emplace_back(c);
}

Eigen::VectorXd CompiledField::eval(std::span<const double> q) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(nvars()));
  eval_into(q, v);
  return v;
}

void CompiledField::eval_into(std::span<const double> q, Eigen::Ref<Eigen::VectorXd> out) const {
  for (std::size_t i = 0; i < components_.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = components_[i].eval(q);
}

}  // namespace popp
