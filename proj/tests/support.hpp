#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "popp/poly.hpp"
#include "popp/vector_field.hpp"

namespace popp::testing {

/// Random sparse polynomial with small rational coefficients, some of them
/// in Q(sqrt 2), total degree <= max_degree.
inline Poly random_poly(std::mt19937_64& rng, std::size_t n, int max_degree, int max_terms = 5) {
  std::uniform_int_distribution<int> terms(0, max_terms);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> with_sqrt2(0, 5);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  std::uniform_int_distribution<int> deg(0, max_degree);
  Poly p(n);
  int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    Exponent e(n, 0);
    int d = deg(rng);
    for (int i = 0; i < d; ++i) ++e[var(rng)];
    Coefficient c(mpq_class(num(rng), den(rng)));
    if (with_sqrt2(rng) == 0) c = c * Coefficient::sqrt2();
    p += Poly::monomial(n, e, c);
  }
  return p;
}

inline VectorField random_field(std::mt19937_64& rng, std::size_t n, int max_degree) {
  std::vector<Poly> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(random_poly(rng, n, max_degree));
  return VectorField(std::move(c));
}

inline std::vector<mpq_class> random_rational_point(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 7);
  std::vector<mpq_class> q;
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class v(num(rng), den(rng));
    v.canonicalize();
    q.push_back(v);
  }
  return q;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace popp::testing
