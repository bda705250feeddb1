#include "popp/maps.hpp"

#include <cmath>
#include <random>

#include "popp/compiled.hpp"
#include "popp/errors.hpp"
#include "popp/parallel.hpp"
#include "popp/volume.hpp"

namespace popp {

namespace {

constexpr int kSampledInverseChecks = 50;
constexpr double kSampledInverseTol = 1e-10;

Point eval_all(const std::vector<Poly>& polys, const Point& q) {
  Point out(static_cast<Eigen::Index>(polys.size()));
  for (std::size_t i = 0; i < polys.size(); ++i) out[static_cast<Eigen::Index>(i)] = polys[i].eval(as_span(q));
  return out;
}

bool composes_to_identity_exactly(const std::vector<Poly>& f, const std::vector<Poly>& g) {
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(compose(f[i], g) == Poly::variable(n, i))) return false;
  }
  return true;
}

bool composes_to_identity_sampled(const std::vector<Poly>& f, const std::vector<Poly>& g) {
  const std::size_t n = f.size();
  std::mt19937_64 rng(0x5eedu);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  for (int t = 0; t < kSampledInverseChecks; ++t) {
    Point p(static_cast<Eigen::Index>(n));
    for (auto& v : p) v = coord(rng);
    Point back = eval_all(f, eval_all(g, p));
    if ((back - p).norm() > kSampledInverseTol * std::max(1.0, p.norm())) return false;
  }
  return true;
}

double popp_density(const SRStructure& s, const Point& q, const FlagOptions& opts) {
  return evaluate_volume(adapted_frame(s, q, opts), q).density_coordinates;
}

}  // namespace

Point PolyMap::apply(const Point& q) const { return eval_all(forward, q); }

Point PolyMap::apply_inverse(const Point& q) const { return eval_all(inverse, q); }

Eigen::MatrixXd PolyMap::jacobian(const Point& q) const {
  const std::size_t n = dimension();
  Eigen::MatrixXd j(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = forward[r].partial(c).eval(as_span(q));
    }
  }
  return j;
}

PolyMap make_poly_map(std::string name, std::vector<Poly> forward, std::vector<Poly> inverse,
                      InverseCheck* how) {
  const std::size_t n = forward.size();
  if (n == 0 || inverse.size() != n)
    throw ValidationError("map '" + name + "' needs n forward and n inverse components");
  for (const auto& p : forward) {
    if (p.nvars() != n) throw ValidationError("map '" + name + "': forward component has wrong arity");
  }
  for (const auto& p : inverse) {
    if (p.nvars() != n) throw ValidationError("map '" + name + "': inverse component has wrong arity");
  }
  bool ok = false;
  InverseCheck used = InverseCheck::exact;
  try {
    ok = composes_to_identity_exactly(forward, inverse);
  } catch (const TermCapExceeded&) {
    used = InverseCheck::sampled;
    ok = composes_to_identity_sampled(forward, inverse);
  }
  if (!ok) throw ValidationError("map '" + name + "': forward o inverse is not the identity");
  if (how) *how = used;
  return PolyMap{std::move(name), std::move(forward), std::move(inverse)};
}

PolyMap inverse_map(const PolyMap& m) {
  return PolyMap{m.name + "^-1", m.inverse, m.forward};
}

VectorField pushforward_field(const PolyMap& m, const VectorField& x) {
  const std::size_t n = m.dimension();
  if (x.nvars() != n) throw ValidationError("field and map '" + m.name + "' differ in dimension");
  std::vector<Poly> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Poly c = directional_derivative(x, m.forward[i]);
    out.push_back(compose(c, m.inverse));
  }
  return VectorField(std::move(out));
}

IsometryReport is_isometry(const PolyMap& m, const SRStructure& s, const std::vector<Point>& sample,
                           double tol, const FlagOptions& opts) {
  if (m.dimension() != s.dimension())
    throw ValidationError("map '" + m.name + "' and structure differ in dimension");
  const auto k = static_cast<Eigen::Index>(s.rank());
  IsometryReport report;
  report.points = parallel_map(sample.size(), [&](std::size_t idx) {
    IsometryPoint pt{sample[idx], {}, 0.0, {}, 0.0, std::nullopt};
    try {
      s.check_point(pt.q);
      pt.image = m.apply(pt.q);
      s.check_horizontal(pt.image, opts.rank_tol);
      Eigen::MatrixXd pushed = m.jacobian(pt.q) * s.horizontal_values(pt.q);
      Eigen::MatrixXd h = s.horizontal_values(pt.image);
      Eigen::MatrixXd a = h.colPivHouseholderQr().solve(pushed);
      Eigen::MatrixXd residual = h * a - pushed;
      for (Eigen::Index i = 0; i < k; ++i) {
        double scale = std::max(pushed.col(i).norm(), 1e-300);
        pt.span_residual = std::max(pt.span_residual, residual.col(i).norm() / scale);
      }
      pt.gram = a.transpose() * a;
      pt.gram_error = (pt.gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
    } catch (const Error& e) {
      pt.error = e.what();
    }
    return pt;
  });
  bool errors = false;
  for (const auto& pt : report.points) {
    errors = errors || pt.error.has_value();
    report.max_span_residual = std::max(report.max_span_residual, pt.span_residual);
    report.max_gram_error = std::max(report.max_gram_error, pt.gram_error);
  }
  report.preserves_distribution = !errors && report.max_span_residual < tol;
  report.preserves_metric = !errors && report.max_gram_error < tol;
  report.passed = report.preserves_distribution && report.preserves_metric;
  return report;
}

VolumeReport check_volume_preserving(const PolyMap& m, const SRStructure& s,
                                     const std::vector<Point>& sample, double tol,
                                     const FlagOptions& opts, const Poly* weight) {
  if (m.dimension() != s.dimension())
    throw ValidationError("map '" + m.name + "' and structure differ in dimension");
  if (weight && weight->nvars() != s.dimension())
    throw ValidationError("volume weight has wrong dimension");
  VolumeReport report;
  report.points = parallel_map(sample.size(), [&](std::size_t idx) {
    VolumePoint pt;
    pt.q = sample[idx];
    try {
      s.check_point(pt.q);
      pt.image = m.apply(pt.q);
      pt.density_at_q = popp_density(s, pt.q, opts);
      pt.density_at_image = popp_density(s, pt.image, opts);
      if (weight) {
        pt.density_at_q *= weight->eval(as_span(pt.q));
        pt.density_at_image *= weight->eval(as_span(pt.image));
      }
      pt.jacobian_abs_det = std::abs(m.jacobian(pt.q).determinant());
      double pulled = pt.density_at_image * pt.jacobian_abs_det;
      pt.relative_error = std::abs(pulled - pt.density_at_q) / std::abs(pt.density_at_q);
    } catch (const Error& e) {
      pt.error = e.what();
    }
    return pt;
  });
  bool errors = false;
  for (const auto& pt : report.points) {
    errors = errors || pt.error.has_value();
    report.max_relative_error = std::max(report.max_relative_error, pt.relative_error);
  }
  if (!report.points.empty() && !report.points.front().error) {
    const auto& p = report.points.front();
    report.first_ratio = p.density_at_image * p.jacobian_abs_det / p.density_at_q;
  }
  report.passed = !errors && report.max_relative_error < tol;
  return report;
}

}  // namespace popp
