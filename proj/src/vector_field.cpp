#include "popp/vector_field.hpp"

#include "popp/errors.hpp"

namespace popp {

namespace {

void require_same_dim(const VectorField& a, const VectorField& b, const char* what) {
  if (a.nvars() != b.nvars()) throw ValidationError(std::string(what) + ": dimension mismatch");
}

}  // namespace

VectorField::VectorField(std::vector<Poly> components) : components_(std::move(components)) {
  if (components_.empty()) throw ValidationError("vector field needs at least one component");
  for (const auto& c : components_) {
    if (c.nvars() != components_.size())
      throw ValidationError("vector field component count must equal nvars");
  }
}

VectorField VectorField::zero(std::size_t nvars) {
  return VectorField(std::vector<Poly>(nvars, Poly(nvars)));
}

VectorField VectorField::coordinate(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw ValidationError("coordinate field index out of range");
  std::vector<Poly> comps(nvars, Poly(nvars));
  comps[index] = Poly::constant(nvars, Coefficient(1));
  return VectorField(std::move(comps));
}

bool VectorField::is_zero() const {
  for (const auto& c : components_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

Eigen::VectorXd VectorField::eval(std::span<const double> q) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(nvars()));
  for (std::size_t i = 0; i < nvars(); ++i) v[static_cast<Eigen::Index>(i)] = components_[i].eval(q);
  return v;
}

VectorField VectorField::operator-() const {
  std::vector<Poly> comps;
  comps.reserve(nvars());
  for (const auto& c : components_) comps.push_back(-c);
  return VectorField(std::move(comps));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_dim(a, b, "vector field sum");
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < a.nvars(); ++i) comps.push_back(a[i] + b[i]);
  return VectorField(std::move(comps));
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  require_same_dim(a, b, "vector field difference");
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < a.nvars(); ++i) comps.push_back(a[i] - b[i]);
  return VectorField(std::move(comps));
}

VectorField operator*(const Poly& f, const VectorField& x) {
  if (f.nvars() != x.nvars()) throw ValidationError("function times field: dimension mismatch");
  std::vector<Poly> comps;
  for (const auto& c : x.components()) comps.push_back(f * c);
  return VectorField(std::move(comps));
}

VectorField operator*(const Coefficient& s, const VectorField& x) {
  std::vector<Poly> comps;
  for (const auto& c : x.components()) comps.push_back(c * s);
  return VectorField(std::move(comps));
}

std::string VectorField::to_string(std::span<const std::string> names) const {
  std::string out = "[";
  for (std::size_t i = 0; i < nvars(); ++i) {
    if (i) out += ", ";
    out += components_[i].to_string(names);
  }
  return out + "]";
}

Poly directional_derivative(const VectorField& x, const Poly& f) {
  if (x.nvars() != f.nvars()) throw ValidationError("directional derivative: dimension mismatch");
  Poly out(f.nvars());
  for (std::size_t j = 0; j < x.nvars(); ++j) {
    if (x[j].is_zero()) continue;
    Poly d = f.partial(j);
    if (d.is_zero()) continue;
    out += x[j] * d;
  }
  return out;
}

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_dim(x, y, "lie bracket");
  std::vector<Poly> comps;
  comps.reserve(x.nvars());
  for (std::size_t i = 0; i < x.nvars(); ++i) {
    comps.push_back(directional_derivative(x, y[i]) - directional_derivative(y, x[i]));
  }
  return VectorField(std::move(comps));
}

Poly euclidean_divergence(const VectorField& x) {
  Poly out(x.nvars());
  for (std::size_t i = 0; i < x.nvars(); ++i) out += x[i].partial(i);
  return out;
}

}  // namespace popp
