#include "popp/poly_parser.hpp"

#include <cctype>
#include <optional>

namespace popp {

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars, std::span<const std::string> names)
      : text_(text), nvars_(nvars), names_(names) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw PolyParseError("polynomial \"" + std::string(text_) + "\": " + msg + " at column " +
                             std::to_string(pos_ + 1),
                         pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Poly expr() {
    Poly acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Poly term() {
    Poly acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Poly d = unary();
        if (!d.is_constant() || d.is_zero()) {
          pos_ = at;
          fail("division only by a nonzero constant");
        }
        acc *= d.coefficient(Exponent(nvars_, 0)).inverse();
      } else {
        return acc;
      }
    }
  }

  Poly unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a non-negative integer literal");
      if (pos_ - start > 4) fail("exponent too large");
      unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > 1000) fail("exponent too large");
      return base.pow(static_cast<std::uint32_t>(e));
    }
    return base;
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      expect(')');
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string ident(text_.substr(start, pos_ - start));
      if (ident == "sqrt") {
        expect('(');
        skip_ws();
        if (!(pos_ < text_.size() && text_[pos_] == '2')) fail("only sqrt(2) is supported");
        ++pos_;
        expect(')');
        return Poly::constant(nvars_, Coefficient::sqrt2());
      }
      if (auto idx = lookup(ident)) return Poly::variable(nvars_, *idx);
      pos_ = start;
      fail("unknown variable '" + ident + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Poly number() {
    std::size_t start = pos_;
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_dot = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        digits += c;
        if (seen_dot) ++frac_digits;
      } else if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (digits.empty()) {
      pos_ = start;
      fail("malformed number");
    }
    mpz_class num(digits, 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_digits);
    mpq_class value(num, den);
    value.canonicalize();
    return Poly::constant(nvars_, Coefficient(value));
  }

  std::optional<std::size_t> lookup(const std::string& ident) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == ident) return i;
    }
    if (ident.size() > 1 && ident[0] == 'x') {
      bool all_digits = true;
      for (std::size_t i = 1; i < ident.size(); ++i)
        all_digits = all_digits && std::isdigit(static_cast<unsigned char>(ident[i]));
      if (all_digits && ident.size() <= 10) {
        unsigned long v = std::stoul(ident.substr(1));
        if (v >= 1 && v <= nvars_) return v - 1;
      }
    }
    return std::nullopt;
  }

  std::string_view text_;
  std::size_t nvars_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, std::size_t nvars, std::span<const std::string> names) {
  if (nvars == 0) throw ValidationError("polynomial needs at least one variable");
  return Parser(text, nvars, names).parse();
}

Poly parse_poly(std::string_view text, std::size_t nvars) {
  auto names = default_variable_names(nvars);
  return parse_poly(text, nvars, names);
}

}  // namespace popp
