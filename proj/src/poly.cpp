#include "popp/poly.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>

#include "popp/errors.hpp"

namespace popp {

namespace {

std::atomic<std::size_t> g_term_cap{1'000'000};

std::uint32_t total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

}  // namespace

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  auto da = total_degree(a);
  auto db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t term_cap() { return g_term_cap.load(); }
void set_term_cap(std::size_t cap) { g_term_cap.store(cap); }

Poly::Poly(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw ValidationError("polynomial needs at least one variable");
}

Poly Poly::constant(std::size_t nvars, const Coefficient& c) {
  return monomial(nvars, Exponent(nvars, 0), c);
}

Poly Poly::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw ValidationError("variable index out of range");
  Exponent e(nvars, 0);
  e[index] = 1;
  return monomial(nvars, std::move(e), Coefficient(1));
}

Poly Poly::monomial(std::size_t nvars, Exponent exponent, const Coefficient& c) {
  Poly p(nvars);
  if (exponent.size() != nvars) throw ValidationError("exponent length does not match nvars");
  if (!c.is_zero()) p.terms_.emplace(std::move(exponent), c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(total_degree(terms_.rbegin()->first));
}

std::uint32_t Poly::max_variable_degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) {
    for (auto v : e) d = std::max(d, v);
  }
  return d;
}

Coefficient Poly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Coefficient(0) : it->second;
}

void Poly::add_term(const Exponent& e, const Coefficient& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::check_cap() const {
  if (terms_.size() > term_cap()) {
    throw TermCapExceeded("polynomial exceeds term cap of " + std::to_string(term_cap()) +
                          " terms");
  }
}

Coefficient Poly::eval_exact(std::span<const mpq_class> q) const {
  if (q.size() != nvars_) throw ValidationError("evaluation point has wrong dimension");
  // Power tables per variable, built up to the degree actually used.
  std::uint32_t maxdeg = max_variable_degree();
  std::vector<std::vector<mpq_class>> powers(nvars_);
  for (std::size_t i = 0; i < nvars_; ++i) {
    powers[i].reserve(maxdeg + 1);
    powers[i].emplace_back(1);
    for (std::uint32_t d = 1; d <= maxdeg; ++d) powers[i].push_back(powers[i].back() * q[i]);
  }
  Coefficient sum;
  for (const auto& [e, c] : terms_) {
    mpq_class m(1);
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] != 0) m *= powers[i][e[i]];
    }
    sum += c * Coefficient(m);
  }
  return sum;
}

double Poly::eval(std::span<const double> q) const {
  if (q.size() != nvars_) throw ValidationError("evaluation point has wrong dimension");
  std::vector<mpq_class> exact;
  exact.reserve(q.size());
  for (double v : q) {
    if (!std::isfinite(v)) throw ValidationError("evaluation point is not finite");
    exact.emplace_back(v);
  }
  return eval_exact(exact).to_double();
}

Poly Poly::partial(std::size_t var) const {
  if (var >= nvars_) throw ValidationError("partial derivative index out of range");
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.terms_.emplace_hint(out.terms_.end(), std::move(d), c * Coefficient(static_cast<long>(e[var])));
  }
  return out;
}

Poly Poly::pow(std::uint32_t e) const {
  Poly result = constant(nvars_, Coefficient(1));
  Poly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.nvars_ != nvars_) throw ValidationError("polynomial nvars mismatch in addition");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  check_cap();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.nvars_ != nvars_) throw ValidationError("polynomial nvars mismatch in subtraction");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  check_cap();
  return *this;
}

Poly& Poly::operator*=(const Coefficient& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) throw ValidationError("polynomial nvars mismatch in product");
  Poly out(a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
    out.check_cap();
  }
  return out;
}

std::vector<std::string> default_variable_names(std::size_t nvars) {
  static const char* short_names[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < nvars; ++i) {
    names.push_back(nvars <= 4 ? std::string(short_names[i]) : "x" + std::to_string(i + 1));
  }
  return names;
}

std::string Poly::to_string() const {
  auto names = default_variable_names(nvars_);
  return to_string(names);
}

std::string Poly::to_string(std::span<const std::string> names) const {
  if (names.size() != nvars_) throw ValidationError("wrong number of variable names");
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    // Mixed a + b*sqrt(2) coefficients print parenthesised with their own
    // signs; everything else prints a separate sign and a magnitude.
    bool mixed = sgn(c.rational_part()) != 0 && !c.is_rational();
    bool negative = !mixed && c.sign() < 0;
    Coefficient mag = negative ? -c : c;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    bool unit = mag == Coefficient(1);
    if (mono.empty()) {
      out += mag.to_string();
    } else if (unit) {
      out += mono;
    } else {
      out += mag.to_string() + "*" + mono;
    }
  }
  return out;
}

Poly compose(const Poly& p, std::span<const Poly> subs) {
  if (subs.size() != p.nvars()) throw ValidationError("compose: wrong number of substitutions");
  if (subs.empty()) throw ValidationError("compose: no substitutions");
  std::size_t n = subs.front().nvars();
  for (const auto& s : subs) {
    if (s.nvars() != n) throw ValidationError("compose: substitutions differ in nvars");
  }
  std::uint32_t maxdeg = p.max_variable_degree();
  std::vector<std::vector<Poly>> powers(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    powers[i].push_back(Poly::constant(n, Coefficient(1)));
    for (std::uint32_t d = 1; d <= maxdeg; ++d) powers[i].push_back(powers[i].back() * subs[i]);
  }
  Poly out(n);
  for (const auto& [e, c] : p.terms()) {
    Poly term = Poly::constant(n, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term = term * powers[i][e[i]];
    }
    out += term;
  }
  return out;
}

}  // namespace popp
