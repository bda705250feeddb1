#include "popp/coefficient.hpp"

#include <cmath>
#include <numbers>

#include "popp/errors.hpp"

namespace popp {

double Coefficient::to_double() const {
  if (is_rational()) return rational_.get_d();
  return rational_.get_d() + sqrt2_.get_d() * std::numbers::sqrt2;
}

Coefficient& Coefficient::operator+=(const Coefficient& o) {
  rational_ += o.rational_;
  sqrt2_ += o.sqrt2_;
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& o) {
  rational_ -= o.rational_;
  sqrt2_ -= o.sqrt2_;
  return *this;
}

Coefficient& Coefficient::operator*=(const Coefficient& o) {
  if (is_rational() && o.is_rational()) {
    rational_ *= o.rational_;
    return *this;
  }
  mpq_class a = rational_ * o.rational_ + 2 * sqrt2_ * o.sqrt2_;
  mpq_class b = rational_ * o.sqrt2_ + sqrt2_ * o.rational_;
  rational_ = std::move(a);
  sqrt2_ = std::move(b);
  return *this;
}

Coefficient Coefficient::inverse() const {
  if (is_zero()) throw ValidationError("division by zero constant");
  // (a + b r)^-1 = (a - b r) / (a^2 - 2 b^2); the norm is nonzero because
  // sqrt(2) is irrational.
  mpq_class norm = rational_ * rational_ - 2 * sqrt2_ * sqrt2_;
  return {rational_ / norm, -sqrt2_ / norm};
}

int Coefficient::sign() const {
  int sa = sgn(rational_);
  int sb = sgn(sqrt2_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 2 b^2.
  int cmp_ = cmp(rational_ * rational_, 2 * sqrt2_ * sqrt2_);
  return cmp_ > 0 ? sa : sb;
}

std::string Coefficient::to_string() const {
  if (is_rational()) return rational_.get_str();
  if (sgn(rational_) == 0) {
    if (sqrt2_ == 1) return "sqrt(2)";
    if (sqrt2_ == -1) return "-sqrt(2)";
    return sqrt2_.get_str() + "*sqrt(2)";
  }
  std::string s = "(" + rational_.get_str();
  if (sgn(sqrt2_) > 0) s += "+";
  if (sqrt2_ == 1) {
    s += "sqrt(2)";
  } else if (sqrt2_ == -1) {
    s += "-sqrt(2)";
  } else {
    s += sqrt2_.get_str() + "*sqrt(2)";
  }
  return s + ")";
}

}  // namespace popp
