#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "popp/errors.hpp"
#include "popp/poly.hpp"

namespace popp {

class PolyParseError : public ValidationError {
 public:
  PolyParseError(const std::string& what, std::size_t column)
      : ValidationError(what), column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// Parses polynomial text over n variables.
///
/// Grammar: integer and decimal literals, the constant sqrt(2), variables,
/// + - * / ^ and parentheses. Division is only allowed by a nonzero
/// constant, exponents must be non-negative integer literals. Variables
/// x1..xn are always accepted; `names` adds aliases (by default x, y, z, w
/// when n <= 4).
Poly parse_poly(std::string_view text, std::size_t nvars, std::span<const std::string> names);
Poly parse_poly(std::string_view text, std::size_t nvars);

}  // namespace popp
