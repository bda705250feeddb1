#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "popp/coefficient.hpp"

namespace popp {

using Exponent = std::vector<std::uint32_t>;

/// Graded lexicographic order: total degree first, then lexicographic with
/// x1 > x2 > ... .
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Upper bound on the number of terms any single polynomial operation may
/// produce. Defaults to 10^6.
std::size_t term_cap();
void set_term_cap(std::size_t cap);

/// Exact sparse multivariate polynomial over Q(sqrt 2).
///
/// Values are immutable once built; arithmetic returns new polynomials.
/// Terms are kept in grlex order with no zero coefficients, so equality is
/// structural and printing is deterministic.
class Poly {
 public:
  using TermMap = std::map<Exponent, Coefficient, GrlexLess>;

  explicit Poly(std::size_t nvars);

  static Poly constant(std::size_t nvars, const Coefficient& c);
  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly monomial(std::size_t nvars, Exponent exponent, const Coefficient& c);

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  /// Largest exponent of any single variable.
  std::uint32_t max_variable_degree() const;
  Coefficient coefficient(const Exponent& e) const;

  /// Exact evaluation at a binary floating point point (every double is a
  /// dyadic rational), rounded once to double at the end.
  double eval(std::span<const double> q) const;
  Coefficient eval_exact(std::span<const mpq_class> q) const;

  Poly partial(std::size_t var) const;
  Poly pow(std::uint32_t e) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Coefficient& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Coefficient& c) { return a *= c; }
  friend Poly operator*(const Coefficient& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Canonical text, highest grlex term first, e.g. "x^2*y - 1/2*z + 3".
  /// Parses back to the same polynomial under the same variable names.
  std::string to_string(std::span<const std::string> names) const;
  std::string to_string() const;

 private:
  void add_term(const Exponent& e, const Coefficient& c);
  void check_cap() const;

  std::size_t nvars_;
  TermMap terms_;
};

/// Default variable names: x, y, z, w for n <= 4, else x1..xn.
std::vector<std::string> default_variable_names(std::size_t nvars);

/// Substitutes subs[i] for variable i of p. All subs share one nvars,
/// which becomes the nvars of the result.
Poly compose(const Poly& p, std::span<const Poly> subs);

}  // namespace popp
