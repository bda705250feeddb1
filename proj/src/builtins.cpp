#include "popp/builtins.hpp"

#include <array>
#include <random>

#include "popp/errors.hpp"
#include "popp/poly_parser.hpp"

namespace popp {

namespace {

VectorField field(std::size_t n, std::initializer_list<const char*> components) {
  std::vector<Poly> out;
  for (const char* c : components) out.push_back(parse_poly(c, n));
  return VectorField(std::move(out));
}

Poly var(std::size_t n, std::size_t i) { return Poly::variable(n, i); }
Poly cst(std::size_t n, const Coefficient& c) { return Poly::constant(n, c); }

void require_params(const std::vector<Coefficient>& g, std::size_t n, const char* group) {
  if (g.size() != n)
    throw ValidationError(std::string(group) + " translation needs " + std::to_string(n) +
                          " group coordinates");
}

Builtin heisenberg() {
  const std::size_t n = 3;
  Builtin b{SRStructure("heisenberg", {field(n, {"1", "0", "-y/2"}), field(n, {"0", "1", "x/2"})}),
            {{field(n, {"0", "0", "1"})}, {field(n, {"1", "0", "1 - y/2"})}},  // dz, dz + X1
            field(n, {"0", "0", "1"}),
            true,
            {},
            [](const Point&) { return false; }};
  // (a,b,c).(x,y,z) = (x+a, y+b, z+c+(ay-bx)/2); the inverse element is -(a,b,c).
  b.translation = [n](const std::vector<Coefficient>& g) {
    require_params(g, n, "heisenberg");
    auto make = [n](const Coefficient& a, const Coefficient& bb, const Coefficient& c) {
      Coefficient half = Coefficient(mpq_class(1, 2));
      return std::vector<Poly>{var(n, 0) + cst(n, a), var(n, 1) + cst(n, bb),
                               var(n, 2) + cst(n, c) + var(n, 1) * (half * a) -
                                   var(n, 0) * (half * bb)};
    };
    return make_poly_map("heisenberg translation", make(g[0], g[1], g[2]),
                         make(-g[0], -g[1], -g[2]));
  };
  return b;
}

Builtin martinet() {
  const std::size_t n = 3;
  return Builtin{SRStructure("martinet", {field(n, {"1", "0", "y^2"}), field(n, {"0", "1", "0"})}),
                 {{field(n, {"0", "0", "1"})}, {field(n, {"0", "0", "-2*y"})}},  // dz, [X,Y]
                 field(n, {"0", "0", "1"}),
                 false,
                 {},
                 [](const Point& q) { return q[1] == 0.0; }};
}

Builtin engel() {
  const std::size_t n = 4;
  Builtin b{SRStructure("engel", {field(n, {"1", "0", "0", "0"}), field(n, {"0", "1", "x", "x^2/2"})}),
            {{field(n, {"0", "0", "1", "x"}), field(n, {"0", "0", "0", "1"})},
             {field(n, {"1", "0", "1", "x"}), field(n, {"0", "0", "0", "2"})}},
            std::nullopt,
            true,
            {},
            [](const Point&) { return false; }};
  // phi(x,y,z,w) = (x+a, y+b, z+ay+c, w+az+a^2/2 y+d).
  b.translation = [n](const std::vector<Coefficient>& g) {
    require_params(g, n, "engel");
    auto make = [n](const Coefficient& a, const Coefficient& bb, const Coefficient& c,
                    const Coefficient& d) {
      Coefficient half_a2 = Coefficient(mpq_class(1, 2)) * a * a;
      return std::vector<Poly>{var(n, 0) + cst(n, a), var(n, 1) + cst(n, bb),
                               var(n, 2) + var(n, 1) * a + cst(n, c),
                               var(n, 3) + var(n, 2) * a + var(n, 1) * half_a2 + cst(n, d)};
    };
    const Coefficient& a = g[0];
    const Coefficient& bb = g[1];
    const Coefficient& c = g[2];
    const Coefficient& d = g[3];
    Coefficient half = Coefficient(mpq_class(1, 2));
    return make_poly_map("engel translation", make(a, bb, c, d),
                         make(-a, -bb, a * bb - c, a * c - d - half * a * a * bb));
  };
  return b;
}

// b^h_ij = (L^h)_ij with L^1, L^2, L^3 = (E12 - E21), (E13 - E31), (E23 - E32)
// scaled by 1/sqrt(2), an orthonormal triple for Tr(A^T B).
Coefficient carnot_b(std::size_t h, std::size_t i, std::size_t j) {
  static const std::array<std::array<std::size_t, 2>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  Coefficient s = Coefficient(mpq_class(0), mpq_class(1, 2));  // 1/sqrt(2)
  if (pairs[h][0] == i && pairs[h][1] == j) return s;
  if (pairs[h][0] == j && pairs[h][1] == i) return -s;
  return Coefficient(0);
}

Builtin carnot_k3() {
  const std::size_t n = 6;
  const std::size_t k = 3;
  const Coefficient minus_half(mpq_class(-1, 2));
  // X_i = d/dx_i - 1/2 sum_{j,h} b^h_ij x_j d/dy_h, so that [X_i, X_j] = sum_h b^h_ij d/dy_h.
  std::vector<VectorField> horizontal;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Poly> c(n, Poly(n));
    c[i] = cst(n, 1);
    for (std::size_t h = 0; h < k; ++h) {
      for (std::size_t j = 0; j < k; ++j) c[k + h] += var(n, j) * (minus_half * carnot_b(h, i, j));
    }
    horizontal.emplace_back(std::move(c));
  }
  std::vector<VectorField> first;
  for (std::size_t h = 0; h < k; ++h) first.push_back(VectorField::coordinate(n, k + h));
  std::vector<VectorField> second{
      VectorField::coordinate(n, 3) + VectorField::coordinate(n, 4),
      VectorField::coordinate(n, 4),
      VectorField::coordinate(n, 5) + var(n, 0) * VectorField::coordinate(n, 1)};

  Builtin b{SRStructure("carnot-k3", std::move(horizontal)),
            {std::move(first), std::move(second)},
            std::nullopt,
            true,
            {},
            [](const Point&) { return false; }};
  // (a,c).(x,y) = (x+a, y+c+1/2 sum b^h_ij a_i x_j); the inverse element is -(a,c).
  b.translation = [n, k](const std::vector<Coefficient>& g) {
    require_params(g, n, "carnot-k3");
    auto make = [n, k](const std::vector<Coefficient>& e) {
      std::vector<Poly> out;
      for (std::size_t i = 0; i < k; ++i) out.push_back(var(n, i) + cst(n, e[i]));
      Coefficient half(mpq_class(1, 2));
      for (std::size_t h = 0; h < k; ++h) {
        Poly p = var(n, k + h) + cst(n, e[k + h]);
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) p += var(n, j) * (half * carnot_b(h, i, j) * e[i]);
        }
        out.push_back(std::move(p));
      }
      return out;
    };
    std::vector<Coefficient> neg;
    for (const auto& c : g) neg.push_back(-c);
    return make_poly_map("carnot-k3 translation", make(g), make(neg));
  };
  return b;
}

}  // namespace

std::vector<std::string> builtin_names() { return {"heisenberg", "martinet", "engel", "carnot-k3"}; }

Builtin builtin(const std::string& name) {
  if (name == "heisenberg") return heisenberg();
  if (name == "martinet") return martinet();
  if (name == "engel") return engel();
  if (name == "carnot-k3") return carnot_k3();
  std::string known;
  for (const auto& n : builtin_names()) known += (known.empty() ? "" : ", ") + n;
  throw ValidationError("unknown builtin '" + name + "' (known: " + known + ")");
}

PolyMap heisenberg_dilation() {
  const std::size_t n = 3;
  return make_poly_map("dilation", {parse_poly("2*x", n), parse_poly("2*y", n), parse_poly("4*z", n)},
                       {parse_poly("x/2", n), parse_poly("y/2", n), parse_poly("z/4", n)});
}

PolyMap translation_by(const Builtin& b, const Point& g) {
  if (!b.translation) throw ValidationError(b.structure.name() + " has no translation family");
  std::vector<Coefficient> coords;
  for (double v : g) coords.emplace_back(mpq_class(v));
  return b.translation(coords);
}

std::vector<Point> builtin_sample(const Builtin& b, std::size_t count, std::uint64_t seed) {
  const auto n = static_cast<Eigen::Index>(b.structure.dimension());
  const bool martinet = b.structure.name() == "martinet";
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> away(0.1, 2.0);
  std::bernoulli_distribution sign(0.5);
  std::vector<Point> out;
  while (out.size() < count) {
    Point q(n);
    for (auto& v : q) v = coord(rng);
    if (martinet) q[1] = sign(rng) ? away(rng) : -away(rng);
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace popp
