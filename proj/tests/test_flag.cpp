#include <doctest.h>

#include <vector>

#include "popp/builtins.hpp"
#include "popp/errors.hpp"
#include "popp/flag.hpp"
#include "popp/linalg.hpp"
#include "popp/poly_parser.hpp"

using namespace popp;

namespace {

Point pt(std::initializer_list<double> v) {
  Point q(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) q[i++] = x;
  return q;
}

std::vector<std::vector<int>> words_of(const AdaptedFrame& f) {
  std::vector<std::vector<int>> out;
  for (const auto& field : f.fields) out.push_back(field.word.value());
  return out;
}

VectorField F(std::initializer_list<const char*> c) {
  std::vector<Poly> out;
  for (const char* s : c) out.push_back(parse_poly(s, c.size()));
  return VectorField(std::move(out));
}

}  // namespace

TEST_CASE("growth vectors of the builtins") {
  SRStructure m = builtin("martinet").structure;
  CHECK(growth_vector(m, pt({0, 1, 0})) == GrowthVector{2, 3});
  CHECK(growth_vector(m, pt({0, 0, 0})) == GrowthVector{2, 2, 3});
  SRStructure h = builtin("heisenberg").structure;
  CHECK(growth_vector(h, pt({0, 0, 0})) == GrowthVector{2, 3});
  CHECK(growth_vector(h, pt({5, -3, 7})) == GrowthVector{2, 3});
  CHECK(growth_vector(builtin("engel").structure, pt({0, 0, 0, 0})) == GrowthVector{2, 3, 4});
  CHECK(growth_vector(builtin("carnot-k3").structure, pt({1, 2, 3, 4, 5, 6})) == GrowthVector{3, 6});
}

TEST_CASE("Hausdorff dimension") {
  CHECK(hausdorff_dimension({2, 3}) == 4);
  CHECK(hausdorff_dimension({2, 3, 4}) == 7);
  CHECK(hausdorff_dimension({3, 6}) == 3 + 2 * 3);
  CHECK(hausdorff_dimension({2, 2, 3}) == 2 + 3 * 1);
}

TEST_CASE("greedy adapted frames") {
  AdaptedFrame m = adapted_frame(builtin("martinet").structure, pt({0, 1, 0}));
  CHECK(words_of(m) == std::vector<std::vector<int>>{{0}, {1}, {0, 1}});
  CHECK(m.fields[2].label == "[X1,X2]");
  CHECK(m.fields[2].field == F({"0", "0", "-2*y"}));

  AdaptedFrame h = adapted_frame(builtin("heisenberg").structure, pt({0, 0, 0}));
  CHECK(h.fields[2].field == F({"0", "0", "1"}));

  AdaptedFrame e = adapted_frame(builtin("engel").structure, pt({0, 0, 0, 0}));
  CHECK(words_of(e) == std::vector<std::vector<int>>{{0}, {1}, {0, 1}, {0, 0, 1}});
  CHECK(e.flag_dims == GrowthVector{2, 3, 4});
  CHECK(e.fields[2].field == F({"0", "0", "1", "x"}));
  CHECK(e.fields[3].field == F({"0", "0", "0", "1"}));
  CHECK(e.fields[3].label == "[X1,[X1,X2]]");
  CHECK(e.fields[3].level == 3);
}

TEST_CASE("frame validity and determinism") {
  for (const auto& name : builtin_names()) {
    Builtin b = builtin(name);
    for (const Point& q : builtin_sample(b, 10, 3)) {
      AdaptedFrame f = adapted_frame(b.structure, q);
      Eigen::MatrixXd m = f.values(q);
      CHECK(condition_number(m) < 1e12);
      CHECK((m.leftCols(static_cast<Eigen::Index>(b.structure.rank())) - b.structure.horizontal_values(q))
                .norm() == 0.0);
      for (int level = 1; level <= f.step(); ++level) {
        for (int i = f.layer_begin(level); i < f.layer_end(level); ++i) {
          CHECK(f.fields[static_cast<std::size_t>(i)].level == level);
          CHECK(static_cast<int>(f.fields[static_cast<std::size_t>(i)].word->size()) == level);
        }
      }
      CHECK(words_of(adapted_frame(b.structure, q)) == words_of(f));
    }
  }
}

TEST_CASE("tolerance stability") {
  for (const auto& name : builtin_names()) {
    Builtin b = builtin(name);
    for (const Point& q : builtin_sample(b, 10, 4)) {
      GrowthVector ref = growth_vector(b.structure, q);
      for (double tol : {1e-12, 1e-10, 1e-8, 1e-6}) {
        FlagOptions o;
        o.rank_tol = tol;
        CHECK(growth_vector(b.structure, q, o) == ref);
      }
    }
  }
}

TEST_CASE("non-equiregular points are refused by adapted_frame") {
  CHECK_THROWS_AS(adapted_frame(builtin("martinet").structure, pt({0, 0, 0})), SingularPoint);
}

TEST_CASE("rank-deficient horizontal fields") {
  // x times the Heisenberg fields' first member: degenerate on x = 0 only.
  SRStructure s("degenerate", {F({"x", "0", "-x*y/2"}), F({"0", "1", "x/2"})});
  CHECK_THROWS_AS(growth_vector(s, pt({0, 1, 1})), RankDeficientHorizontal);
  CHECK(growth_vector(s, pt({1, 0, 0})) == GrowthVector{2, 3});
}

TEST_CASE("non-bracket-generating structures") {
  // An integrable plane field: D = span(d/dx, d/dy) in R^3.
  SRStructure s("flat", {F({"1", "0", "0"}), F({"0", "1", "0"})});
  try {
    growth_vector(s, pt({0, 0, 0}));
    FAIL("expected NotBracketGenerating");
  } catch (const NotBracketGenerating& e) {
    CHECK(e.stalled_rank() == 2);
  }
}

TEST_CASE("structure validation") {
  CHECK_THROWS_AS(SRStructure("low", {F({"1", "0"})}), ValidationError);
  CHECK_THROWS_AS(SRStructure("full", {F({"1", "0", "0"}), F({"0", "1", "0"}), F({"0", "0", "1"})}),
                  ValidationError);
  SRStructure h = builtin("heisenberg").structure;
  CHECK_THROWS_AS(growth_vector(h, pt({0, 0})), ValidationError);
}

TEST_CASE("equiregularity reports") {
  Builtin h = builtin("heisenberg");
  std::vector<Point> grid;
  for (double x : {-1.0, 0.0, 1.0})
    for (double y : {-1.0, 0.0, 1.0})
      for (double z : {-1.0, 0.0, 1.0}) grid.push_back(pt({x, y, z}));
  EquiregularReport r = check_equiregular(h.structure, grid);
  CHECK(r.equiregular);
  REQUIRE(r.strata.size() == 1);
  CHECK(r.strata[0].growth == GrowthVector{2, 3});
  CHECK(r.strata[0].points.size() == 27);

  EquiregularReport m = check_equiregular(builtin("martinet").structure, grid);
  CHECK(!m.equiregular);
  CHECK(m.strata.size() == 2);

  Builtin e = builtin("engel");
  EquiregularReport er = check_equiregular(e.structure, builtin_sample(e, 20, 9));
  CHECK(er.equiregular);
  CHECK(er.strata[0].growth == GrowthVector{2, 3, 4});

  SRStructure flat("flat", {F({"1", "0", "0"}), F({"0", "1", "0"})});
  EquiregularReport fr = check_equiregular(flat, {pt({0, 0, 0})});
  CHECK(!fr.equiregular);
  CHECK(fr.failures.size() == 1);
}

TEST_CASE("completions are assigned to layers") {
  Builtin e = builtin("engel");
  Point q = pt({0.5, -1, 2, 0.25});
  AdaptedFrame f = adapted_frame_with_completion(e.structure, e.completions[1], q);
  CHECK(f.fields[2].level == 2);
  CHECK(f.fields[3].level == 3);
  CHECK(!f.fields[2].word.has_value());
  // A horizontal completion field cannot complete the frame.
  CHECK_THROWS_AS(adapted_frame_with_completion(e.structure, {F({"1", "0", "0", "0"}), F({"0", "0", "0", "1"})}, q),
                  SingularPoint);
  // Two level-3 fields do not match the growth vector (2, 3, 4).
  CHECK_THROWS_AS(adapted_frame_with_completion(e.structure, {F({"0", "0", "0", "1"}), F({"0", "0", "0", "2"})}, q),
                  Error);
}
