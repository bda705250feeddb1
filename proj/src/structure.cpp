#include "popp/structure.hpp"

#include <cmath>
#include <sstream>

#include "popp/compiled.hpp"
#include "popp/errors.hpp"
#include "popp/linalg.hpp"

namespace popp {

SRStructure::SRStructure(std::string name, std::vector<VectorField> horizontal,
                         std::vector<std::string> variable_names)
    : name_(std::move(name)), horizontal_(std::move(horizontal)), names_(std::move(variable_names)) {
  if (horizontal_.empty()) throw ValidationError("structure needs at least one horizontal field");
  n_ = horizontal_.front().nvars();
  for (const auto& f : horizontal_) {
    if (f.nvars() != n_) throw ValidationError("horizontal fields differ in dimension");
  }
  if (n_ < 3) throw ValidationError("dimension must be at least 3");
  if (horizontal_.size() >= n_) throw ValidationError("rank must be smaller than the dimension");
  if (names_.empty()) names_ = default_variable_names(n_);
  if (names_.size() != n_) throw ValidationError("variable name count must equal the dimension");
  for (const auto& f : horizontal_) compiled_.emplace_back(f);
}

Eigen::MatrixXd SRStructure::horizontal_values(const Point& q) const {
  check_point(q);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(rank()));
  for (std::size_t i = 0; i < rank(); ++i)
    m.col(static_cast<Eigen::Index>(i)) = compiled_[i].eval(as_span(q));
  return m;
}

void SRStructure::check_horizontal(const Point& q, double rel_tol) const {
  Eigen::MatrixXd h = horizontal_values(q);
  int r = numerical_rank(h, rel_tol);
  if (r < static_cast<int>(rank())) {
    throw RankDeficientHorizontal("horizontal fields of '" + name_ + "' have rank " +
                                  std::to_string(r) + " < " + std::to_string(rank()) + " at " +
                                  format_point(q));
  }
}

void SRStructure::check_point(const Point& q) const {
  if (static_cast<std::size_t>(q.size()) != n_) {
    throw ValidationError("point " + format_point(q) + " has dimension " +
                          std::to_string(q.size()) + ", expected " + std::to_string(n_));
  }
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (!std::isfinite(q[i])) throw ValidationError("point has non-finite coordinate");
  }
}

std::string format_point(const Point& q) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    if (i) os << ", ";
    os << q[i];
  }
  os << ")";
  return os.str();
}

}  // namespace popp
