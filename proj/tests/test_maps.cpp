#include <doctest.h>

#include <cmath>
#include <vector>

#include "popp/builtins.hpp"
#include "popp/errors.hpp"
#include "popp/maps.hpp"
#include "popp/poly_parser.hpp"

using namespace popp;

namespace {

Point pt(std::initializer_list<double> v) {
  Point q(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) q[i++] = x;
  return q;
}

std::vector<Poly> polys(std::initializer_list<const char*> c) {
  std::vector<Poly> out;
  for (const char* s : c) out.push_back(parse_poly(s, c.size()));
  return out;
}

VectorField F(std::initializer_list<const char*> c) { return VectorField(polys(c)); }

PolyMap then(const PolyMap& first, const PolyMap& second) {
  std::vector<Poly> fwd, inv;
  for (const auto& p : second.forward) fwd.push_back(compose(p, first.forward));
  for (const auto& p : first.inverse) inv.push_back(compose(p, second.inverse));
  return make_poly_map(first.name + " then " + second.name, fwd, inv);
}

}  // namespace

TEST_CASE("maps evaluate and invert") {
  PolyMap shear = make_poly_map("shear", polys({"x + y", "y", "z + x^2"}), polys({"x - y", "y", "z - (x - y)^2"}));
  Point q = pt({1, 2, 3});
  Point p = shear.apply(q);
  CHECK(p == pt({3, 2, 4}));
  CHECK(shear.apply_inverse(p) == q);
  Eigen::MatrixXd j = shear.jacobian(q);
  CHECK(j(0, 1) == 1.0);
  CHECK(j(2, 0) == 2.0);
  CHECK(inverse_map(shear).apply(p) == q);
}

TEST_CASE("pushforward examples") {
  PolyMap shear = make_poly_map("linear", polys({"x + y", "y", "z"}), polys({"x - y", "y", "z"}));
  CHECK(pushforward_field(shear, F({"0", "1", "0"})) == F({"1", "1", "0"}));

  // Left translations push left-invariant fields to themselves.
  Builtin h = builtin("heisenberg");
  PolyMap t = translation_by(h, pt({1, -2, 0.5}));
  CHECK(pushforward_field(t, h.structure.field(0)) == h.structure.field(0));
  CHECK(pushforward_field(t, h.structure.field(1)) == h.structure.field(1));
  Builtin e = builtin("engel");
  PolyMap te = translation_by(e, pt({0.5, 1, -1, 2}));
  CHECK(pushforward_field(te, e.structure.field(1)) == e.structure.field(1));

  // Dilation: X_i -> 2 X_i.
  PolyMap d = heisenberg_dilation();
  CHECK(pushforward_field(d, h.structure.field(0)) == Coefficient(2) * h.structure.field(0));
}

TEST_CASE("pushforward is functorial and preserves brackets") {
  PolyMap a = make_poly_map("a", polys({"x", "y + x^2", "z"}), polys({"x", "y - x^2", "z"}));
  PolyMap b = make_poly_map("b", polys({"x + z^2", "y", "z - y"}), polys({"x - (z + y)^2", "y", "z + y"}));
  PolyMap ab = then(a, b);
  VectorField x = F({"y", "x*z", "1"});
  VectorField y = F({"z^2", "0", "x"});
  CHECK(pushforward_field(ab, x) == pushforward_field(b, pushforward_field(a, x)));
  CHECK(pushforward_field(a, lie_bracket(x, y)) == lie_bracket(pushforward_field(a, x), pushforward_field(a, y)));
}

TEST_CASE("inverse validation") {
  CHECK_THROWS_AS(make_poly_map("bad", polys({"x + 1", "y", "z"}), polys({"x", "y", "z"})), ValidationError);
  CHECK_THROWS_AS(make_poly_map("short", polys({"x", "y", "z"}), {}), ValidationError);
  InverseCheck how = InverseCheck::sampled;
  make_poly_map("id", polys({"x", "y", "z"}), polys({"x", "y", "z"}), &how);
  CHECK(how == InverseCheck::exact);

  // Past the term cap the inverse is checked at sample points instead.
  Builtin e = builtin("engel");
  PolyMap te = translation_by(e, pt({0.5, 1, -1, 2}));
  std::vector<Poly> wrong = te.inverse;
  wrong[3] = wrong[3] + Poly::constant(4, Coefficient(mpq_class(1, 1000)));
  struct CapGuard {
    std::size_t saved = term_cap();
    ~CapGuard() { set_term_cap(saved); }
  } guard;
  set_term_cap(2);
  InverseCheck used = InverseCheck::exact;
  make_poly_map("engel", te.forward, te.inverse, &used);
  CHECK(used == InverseCheck::sampled);
  CHECK_THROWS_AS(make_poly_map("engel", te.forward, wrong), ValidationError);
}

TEST_CASE("left translations are isometries preserving the Popp volume") {
  for (const char* name : {"heisenberg", "engel", "carnot-k3"}) {
    Builtin b = builtin(name);
    std::vector<Point> sample = builtin_sample(b, 10, 17);
    for (const Point& g : builtin_sample(b, 3, 99)) {
      PolyMap t = translation_by(b, g);
      IsometryReport iso = is_isometry(t, b.structure, sample, 1e-8);
      CHECK(iso.passed);
      CHECK(iso.max_gram_error < 1e-10);
      VolumeReport vol = check_volume_preserving(t, b.structure, sample, 1e-8);
      CHECK(vol.passed);
      CHECK(vol.max_relative_error < 1e-10);
    }
  }
}

TEST_CASE("the Heisenberg dilation is not an isometry") {
  Builtin h = builtin("heisenberg");
  std::vector<Point> sample = builtin_sample(h, 5, 3);
  PolyMap d = heisenberg_dilation();
  IsometryReport iso = is_isometry(d, h.structure, sample, 1e-8);
  CHECK(iso.preserves_distribution);
  CHECK(!iso.preserves_metric);
  CHECK(!iso.passed);
  CHECK((iso.points[0].gram - 4 * Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
  VolumeReport vol = check_volume_preserving(d, h.structure, sample, 1e-8);
  CHECK(!vol.passed);
  CHECK(vol.first_ratio == doctest::Approx(16.0));
}

TEST_CASE("maps that move the distribution") {
  Builtin h = builtin("heisenberg");
  PolyMap swap = make_poly_map("swap", polys({"z", "y", "x"}), polys({"z", "y", "x"}));
  IsometryReport iso = is_isometry(swap, h.structure, builtin_sample(h, 3, 5), 1e-8);
  CHECK(!iso.preserves_distribution);
  CHECK(!iso.passed);
}

TEST_CASE("Martinet symmetry") {
  Builtin m = builtin("martinet");
  PolyMap flip = make_poly_map("flip y", polys({"x", "-y", "z"}), polys({"x", "-y", "z"}));
  std::vector<Point> sample = builtin_sample(m, 10, 8);
  CHECK(is_isometry(flip, m.structure, sample, 1e-8).passed);
  CHECK(check_volume_preserving(flip, m.structure, sample, 1e-8).passed);
  PolyMap shift = make_poly_map("shift x", polys({"x + 1", "y", "z"}), polys({"x - 1", "y", "z"}));
  CHECK(check_volume_preserving(shift, m.structure, sample, 1e-8).passed);
}

TEST_CASE("a translation-invariant volume is a multiple of the Popp volume") {
  Builtin h = builtin("heisenberg");
  std::vector<Point> sample = builtin_sample(h, 10, 23);
  Poly constant = Poly::constant(3, 3);
  Poly bump = parse_poly("1 + x^2", 3);
  bool constant_ok = true;
  bool bump_ok = true;
  for (const Point& g : builtin_sample(h, 3, 29)) {
    PolyMap t = translation_by(h, g);
    constant_ok = constant_ok && check_volume_preserving(t, h.structure, sample, 1e-8, {}, &constant).passed;
    bump_ok = bump_ok && check_volume_preserving(t, h.structure, sample, 1e-8, {}, &bump).passed;
  }
  CHECK(constant_ok);
  CHECK(!bump_ok);
}

TEST_CASE("sample points at singular loci are reported per point") {
  Builtin m = builtin("martinet");
  PolyMap flip = make_poly_map("flip y", polys({"x", "-y", "z"}), polys({"x", "-y", "z"}));
  VolumeReport vol = check_volume_preserving(flip, m.structure, {pt({0, 0, 0})}, 1e-8);
  CHECK(!vol.passed);
  CHECK(vol.points[0].error.has_value());
}
