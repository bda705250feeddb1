#pragma once

#include <gmpxx.h>

#include <string>

namespace popp {

/// Exact element a + b*sqrt(2) of the field Q(sqrt 2), a and b arbitrary
/// precision rationals.
///
/// Plain rational polynomials never touch the sqrt(2) part. It exists so
/// that structures such as the free step-2 Carnot group on three
/// generators, whose orthonormal bracket matrices need entries 1/sqrt(2),
/// can still be represented exactly.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(long v) : rational_(v) {}  // NOLINT(google-explicit-constructor)
  Coefficient(mpq_class rational) : rational_(std::move(rational)) {  // NOLINT
    rational_.canonicalize();
  }
  Coefficient(mpq_class rational, mpq_class sqrt2_part)
      : rational_(std::move(rational)), sqrt2_(std::move(sqrt2_part)) {
    rational_.canonicalize();
    sqrt2_.canonicalize();
  }

  static Coefficient sqrt2() { return {mpq_class(0), mpq_class(1)}; }

  const mpq_class& rational_part() const { return rational_; }
  const mpq_class& sqrt2_part() const { return sqrt2_; }

  bool is_zero() const { return sgn(rational_) == 0 && sgn(sqrt2_) == 0; }
  bool is_rational() const { return sgn(sqrt2_) == 0; }

  double to_double() const;

  /// Multiplicative inverse; throws ValidationError on zero.
  Coefficient inverse() const;

  Coefficient operator-() const { return {-rational_, -sqrt2_}; }
  Coefficient& operator+=(const Coefficient& o);
  Coefficient& operator-=(const Coefficient& o);
  Coefficient& operator*=(const Coefficient& o);

  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  friend bool operator==(const Coefficient& a, const Coefficient& b) {
    return a.rational_ == b.rational_ && a.sqrt2_ == b.sqrt2_;
  }

  /// Sign of the real number a + b*sqrt(2), decided exactly.
  int sign() const;

  /// Text accepted back by the polynomial parser, e.g. "3/2",
  /// "1/4*sqrt(2)", "(1+2*sqrt(2))".
  std::string to_string() const;

 private:
  mpq_class rational_{0};
  mpq_class sqrt2_{0};
};

}  // namespace popp
