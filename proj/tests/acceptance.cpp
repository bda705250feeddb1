// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "popp/builtins.hpp"
#include "popp/errors.hpp"
#include "popp/maps.hpp"
#include "popp/poly_parser.hpp"
#include "popp/sublaplacian.hpp"
#include "popp/volume.hpp"
#include "support.hpp"

using namespace popp;
using popp::testing::rel_err;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!o.pass) ++failures;
  std::printf("%s %2d %s: %s[%.1fs]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.str().c_str(), secs);
  std::fflush(stdout);
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double coordinate_density(const SRStructure& s, const Point& q) {
  return evaluate_volume(adapted_frame(s, q), q).density_coordinates;
}

}  // namespace

int main() {
  criterion(1, "carnot-k3 coordinate density is 1", [](Outcome& o) {
    Builtin b = builtin("carnot-k3");
    double worst = 0.0;
    for (const Point& q : builtin_sample(b, 20, 101)) worst = std::max(worst, rel_err(coordinate_density(b.structure, q), 1.0));
    o.require(worst < 1e-10, "relative error " + num(worst));
    o.detail << "max rel error " << num(worst) << " ";
  });

  criterion(2, "Martinet density is 1/(2 sqrt2 |y|)", [](Outcome& o) {
    Builtin b = builtin("martinet");
    const double c = 1.0 / (2.0 * std::sqrt(2.0));
    double worst = 0.0;
    double lo = INFINITY, hi = -INFINITY;
    for (const Point& q : builtin_sample(b, 20, 102)) {
      const double y = std::abs(q[1]);
      o.require(y >= 0.1 && y <= 2.0, "sample outside |y| in [0.1, 2]");
      double rho = coordinate_density(b.structure, q);
      worst = std::max(worst, rel_err(rho, c / y));
      lo = std::min(lo, rho * y);
      hi = std::max(hi, rho * y);
    }
    double spread = (hi - lo) / hi;
    o.require(worst < 1e-9, "relative error " + num(worst));
    o.require(spread < 1e-9, "density*|y| spread " + num(spread));
    o.detail << "max rel error " << num(worst) << ", density*|y| spread " << num(spread) << " ";
  });

  criterion(3, "oracle Gram matrix equals B_j^-1", [](Outcome& o) {
    double worst = 0.0;
    for (const auto& name : builtin_names()) {
      Builtin b = builtin(name);
      for (const Point& q : builtin_sample(b, 20, 103)) {
        AdaptedFrame f = adapted_frame(b.structure, q);
        VolumeAtPoint v = evaluate_volume(f, q);
        for (int j = 2; j <= f.step(); ++j) {
          Eigen::MatrixXd inv = v.gram.blocks[static_cast<std::size_t>(j - 1)].inverse();
          Eigen::MatrixXd og = oracle_gram(f, q, j);
          for (Eigen::Index r = 0; r < inv.rows(); ++r) {
            for (Eigen::Index s = 0; s < inv.cols(); ++s) {
              // Entrywise relative error; exact zeros compared on the block scale.
              double scale = std::max(std::abs(inv(r, s)), 1e-3 * inv.cwiseAbs().maxCoeff());
              worst = std::max(worst, std::abs(og(r, s) - inv(r, s)) / scale);
            }
          }
        }
      }
    }
    o.require(worst < 1e-9, "entrywise relative error " + num(worst));
    o.detail << "max entrywise rel error " << num(worst) << " ";
  });

  criterion(4, "density independent of the adapted completion", [](Outcome& o) {
    double worst = 0.0;
    for (const char* name : {"heisenberg", "martinet"}) {
      Builtin b = builtin(name);
      for (const Point& q : builtin_sample(b, 20, 104)) {
        double d0 = evaluate_volume(adapted_frame_with_completion(b.structure, b.completions[0], q), q).density_coordinates;
        double d1 = evaluate_volume(adapted_frame_with_completion(b.structure, b.completions[1], q), q).density_coordinates;
        worst = std::max(worst, rel_err(d1, d0));
      }
    }
    o.require(worst < 1e-10, "relative difference " + num(worst));
    o.detail << "max rel difference " << num(worst) << " ";
  });

  criterion(5, "Carnot sub-Laplacians are sums of squares", [](Outcome& o) {
    double worst = 0.0;
    for (const char* name : {"heisenberg", "engel", "carnot-k3"}) {
      Builtin b = builtin(name);
      for (const Point& q : builtin_sample(b, 20, 105)) {
        SublaplacianData d = sublaplacian_coeffs(b.structure, adapted_frame(b.structure, q), q);
        for (double a : d.coefficients) worst = std::max(worst, std::abs(a));
      }
    }
    o.require(worst < 1e-8, "coefficient " + num(worst));
    o.detail << "max |a_i| " << num(worst) << " ";
  });

  criterion(6, "Martinet div Y = -1/y", [](Outcome& o) {
    Builtin b = builtin("martinet");
    double worst = 0.0;
    for (double y : {0.25, 0.5, 1.0, 2.0}) {
      Point q(3);
      q << 0.4, y, -0.6;
      // Closed form from B_2 = 8y^2 in the frame (X, Y, dz).
      AdaptedFrame f = adapted_frame_with_completion(b.structure, b.completions[0], q);
      DivergenceResult r = frame_divergence(b.structure, f, q, 1);
      worst = std::max(worst, rel_err(r.value, -1.0 / y));
      DivergenceResult g = frame_divergence(b.structure, adapted_frame(b.structure, q), q, 1);
      worst = std::max(worst, rel_err(g.value, -1.0 / y));
    }
    o.require(worst < 1e-6, "relative error " + num(worst));
    o.detail << "max rel error " << num(worst) << " ";
  });

  criterion(7, "contact invariant equals 1/density^2", [](Outcome& o) {
    double worst = 0.0;
    for (const char* name : {"heisenberg", "martinet"}) {
      Builtin b = builtin(name);
      for (const Point& q : builtin_sample(b, 20, 107)) {
        double j2 = contact_invariant(b.structure, *b.transversal, q);
        AdaptedFrame f = adapted_frame_with_completion(b.structure, {*b.transversal}, q);
        double rho = evaluate_volume(f, q).density_adapted;
        worst = std::max(worst, rel_err(j2, 1.0 / (rho * rho)));
      }
    }
    o.require(worst < 1e-10, "relative error " + num(worst));
    o.detail << "max rel error " << num(worst) << " ";
  });

  criterion(8, "Heisenberg translations preserve metric and volume, dilation does not", [](Outcome& o) {
    Builtin b = builtin("heisenberg");
    std::vector<Point> sample = builtin_sample(b, 20, 108);
    double gram = 0.0, vol = 0.0;
    for (const Point& g : builtin_sample(b, 5, 208)) {
      PolyMap t = translation_by(b, g);
      IsometryReport iso = is_isometry(t, b.structure, sample, 1e-8);
      VolumeReport v = check_volume_preserving(t, b.structure, sample, 1e-8);
      o.require(iso.passed, "translation is not an isometry");
      o.require(v.passed, "translation does not preserve volume");
      gram = std::max(gram, iso.max_gram_error);
      vol = std::max(vol, v.max_relative_error);
    }
    PolyMap d = heisenberg_dilation();
    IsometryReport iso = is_isometry(d, b.structure, sample, 1e-8);
    VolumeReport v = check_volume_preserving(d, b.structure, sample, 1e-8);
    o.require(!iso.passed, "dilation passed is_isometry");
    o.require(!v.passed, "dilation preserved volume");
    double gram_factor = iso.points.front().gram(0, 0);
    double gram_off = 0.0;
    for (const auto& p : iso.points)
      gram_off = std::max(gram_off, (p.gram - 4.0 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff());
    o.require(gram_off < 1e-10, "dilation Gram differs from 4 Id by " + num(gram_off));
    double vol_off = 0.0;
    for (const auto& p : v.points)
      vol_off = std::max(vol_off, rel_err(p.density_at_image * p.jacobian_abs_det / p.density_at_q, 16.0));
    o.require(vol_off < 1e-10, "dilation volume factor differs from 16 by " + num(vol_off));
    o.detail << "translations: max Gram error " << num(gram) << ", max volume error " << num(vol)
             << "; dilation: Gram factor " << num(gram_factor) << ", volume factor " << num(v.first_ratio) << " ";
  });

  criterion(9, "integration by parts on [-1,1]^3", [](Outcome& o) {
    Builtin b = builtin("heisenberg");
    Point origin = Point::Zero(3);
    AdaptedFrame f = adapted_frame(b.structure, origin);
    Poly bump = parse_poly("((1 - x^2)*(1 - y^2)*(1 - z^2))^2", 3);
    Box box{{-1, -1, -1}, {1, 1, 1}};
    double errs[2];
    const int cells[2] = {41, 81};
    const double limit[2] = {0.01, 0.0025};
    for (int t = 0; t < 2; ++t) {
      auto [lhs, rhs] = symmetry_check(b.structure, f, bump, bump, box, cells[t]);
      errs[t] = std::abs(lhs - rhs) / std::abs(rhs);
      o.require(errs[t] < limit[t], std::to_string(cells[t]) + "^3 relative gap " + num(errs[t]));
      o.detail << cells[t] << "^3: " << num(lhs) << " vs " << num(rhs) << " (gap " << num(errs[t]) << "), ";
    }
    o.require(errs[1] < errs[0], "no convergence");
  });

  criterion(10, "bracket identities and b = c consistency", [](Outcome& o) {
    std::mt19937_64 rng(110);
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 2 + static_cast<std::size_t>(t % 4);
      VectorField x = testing::random_field(rng, n, 4);
      VectorField y = testing::random_field(rng, n, 3);
      VectorField z = testing::random_field(rng, n, 2);
      Poly f = testing::random_poly(rng, n, 3);
      bool ok = (lie_bracket(x, y) + lie_bracket(y, x)).is_zero();
      ok = ok && (lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                  lie_bracket(z, lie_bracket(x, y)))
                     .is_zero();
      ok = ok && lie_bracket(x, f * y) == directional_derivative(x, f) * y + f * lie_bracket(x, y);
      if (!ok) ++bad;
    }
    o.require(bad == 0, std::to_string(bad) + " of 200 bracket cases failed");

    double worst = 0.0;
    for (const auto& name : builtin_names()) {
      Builtin b = builtin(name);
      const int k = static_cast<int>(b.structure.rank());
      for (const Point& q : builtin_sample(b, 10, 210)) {
        AdaptedFrame fr = adapted_frame(b.structure, q);
        AdaptedConstants ac = adapted_constants(fr, q);
        StructureConstants sc = structure_constants(fr, q);
        for (int i = 0; i < k; ++i) {
          for (int j = 0; j < k; ++j) {
            std::vector<int> tuple{i, j};
            for (int l = fr.layer_begin(2); l < fr.layer_end(2); ++l) {
              worst = std::max(worst, std::abs(ac.b(l, tuple) - sc(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                                                                     static_cast<std::size_t>(l))));
            }
          }
        }
      }
    }
    o.require(worst < 1e-12, "b - c difference " + num(worst));
    o.detail << "200 bracket cases exact, max |b - c| " << num(worst) << " ";
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
