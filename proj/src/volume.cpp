#include "popp/volume.hpp"

#include <cmath>
#include <sstream>

#include "popp/errors.hpp"

namespace popp {

namespace {

constexpr double kPdRelTol = 1e-13;

FrameSolver make_solver(const AdaptedFrame& frame, const Point& q) {
  return FrameSolver(frame.values(q), frame.options.max_condition, frame.options.residual_tol);
}

void check_vanishing_tail(const Eigen::VectorXd& a, const Eigen::VectorXd& v, int tail_begin,
                          double tol, int level, const Point& q) {
  double scale = std::max(a.norm(), v.norm());
  for (Eigen::Index l = tail_begin; l < a.size(); ++l) {
    if (std::abs(a[l]) > tol * scale) {
      std::ostringstream os;
      os << "bracket of length " << level << " has component " << a[l] << " on frame field "
         << l + 1 << " outside D^" << level << " at " << format_point(q)
         << "; frame is not adapted here";
      throw InternalInconsistency(os.str());
    }
  }
}

}  // namespace

double AdaptedConstants::b(int l, std::span<const int> tuple) const {
  int j = static_cast<int>(tuple.size());
  if (j < 2 || j > static_cast<int>(flag_dims.size())) throw ValidationError("tuple length out of range");
  int begin = flag_dims[static_cast<std::size_t>(j - 2)];
  int end = flag_dims[static_cast<std::size_t>(j - 1)];
  if (l < begin || l >= end) return 0.0;
  Eigen::Index row = 0;
  for (int i : tuple) {
    if (i < 0 || i >= static_cast<int>(rank)) throw ValidationError("tuple index out of range");
    row = row * static_cast<Eigen::Index>(rank) + i;
  }
  return level(j)(row, l - begin);
}

AdaptedConstants adapted_constants(const AdaptedFrame& frame, const Point& q) {
  return adapted_constants(frame, q, make_solver(frame, q));
}

AdaptedConstants adapted_constants(const AdaptedFrame& frame, const Point& q,
                                   const FrameSolver& solver) {
  AdaptedConstants out{q, frame.flag_dims, frame.rank, {}};
  for (int j = 2; j <= frame.step(); ++j) {
    Eigen::MatrixXd w = frame.word_values(j, q);
    int begin = frame.layer_begin(j);
    int end = frame.layer_end(j);
    Eigen::MatrixXd layer(w.cols(), end - begin);
    for (Eigen::Index t = 0; t < w.cols(); ++t) {
      Eigen::VectorXd v = w.col(t);
      Eigen::VectorXd a = solver.solve(v);
      check_vanishing_tail(a, v, end, frame.options.residual_tol, j, q);
      layer.row(t) = a.segment(begin, end - begin).transpose();
    }
    out.levels.push_back(std::move(layer));
  }
  return out;
}

GramData gram_matrices(const AdaptedConstants& c) {
  GramData g{c.q, {}, {}};
  g.blocks.push_back(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(c.rank),
                                               static_cast<Eigen::Index>(c.rank)));
  g.determinants.push_back(1.0);
  for (std::size_t idx = 0; idx < c.levels.size(); ++idx) {
    const Eigen::MatrixXd& b = c.levels[idx];
    const Eigen::Index d = b.cols();
    Eigen::MatrixXd bj(d, d);
    for (Eigen::Index h = 0; h < d; ++h) {
      for (Eigen::Index l = h; l < d; ++l) {
        double s = b.col(h).dot(b.col(l));
        bj(h, l) = s;
        bj(l, h) = s;
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(bj, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    double max_ev = ev.maxCoeff();
    double min_ev = ev.minCoeff();
    if (!(min_ev > 0.0) || !(min_ev > kPdRelTol * max_ev)) {
      std::ostringstream os;
      os << "B_" << idx + 2 << " is not positive definite at " << format_point(c.q)
         << " (eigenvalues in [" << min_ev << ", " << max_ev << "])";
      throw InternalInconsistency(os.str());
    }
    g.determinants.push_back(ev.prod());
    g.blocks.push_back(std::move(bj));
  }
  return g;
}

double popp_density_adapted(const GramData& g) {
  double prod = 1.0;
  for (double d : g.determinants) prod *= d;
  return 1.0 / std::sqrt(prod);
}

double popp_density_coordinates(const AdaptedFrame& frame, const GramData& g, const Point& q) {
  FrameSolver solver = make_solver(frame, q);
  return popp_density_adapted(g) / solver.abs_determinant();
}

VolumeAtPoint evaluate_volume(const AdaptedFrame& frame, const Point& q) {
  FrameSolver solver = make_solver(frame, q);
  AdaptedConstants c = adapted_constants(frame, q, solver);
  GramData g = gram_matrices(c);
  double adapted = popp_density_adapted(g);
  return VolumeAtPoint{std::move(c),
                       std::move(g),
                       adapted,
                       adapted / solver.abs_determinant(),
                       solver.abs_determinant(),
                       solver.condition()};
}

namespace {

/// Layer-j coordinates of v in the frame, via a full-pivot LU solve;
/// in_layer is false when v has components above layer j.
struct LayerCoords {
  Eigen::VectorXd coords;
  bool in_layer;
};

LayerCoords layer_coordinates(const Eigen::FullPivLU<Eigen::MatrixXd>& lu, const Eigen::MatrixXd& m,
                              const Eigen::VectorXd& v, int begin, int end, double tol) {
  Eigen::VectorXd a = lu.solve(v);
  if ((m * a - v).norm() > tol * std::max(v.norm(), 1e-300)) {
    throw InternalInconsistency("oracle frame solve failed its residual check");
  }
  double scale = std::max(a.norm(), v.norm());
  bool in_layer = true;
  for (Eigen::Index l = end; l < a.size(); ++l) in_layer = in_layer && std::abs(a[l]) <= tol * scale;
  return {a.segment(begin, end - begin), in_layer};
}

}  // namespace

double quotient_norm_oracle(const AdaptedFrame& frame, const Point& q, int j,
                            const Eigen::VectorXd& target) {
  if (j < 2 || j > frame.step()) throw ValidationError("oracle level must lie in 2..m");
  if (target.size() != static_cast<Eigen::Index>(frame.dimension))
    throw ValidationError("oracle target has wrong dimension");
  const double tol = frame.options.residual_tol;
  Eigen::MatrixXd m = frame.values(q);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  if (!lu.isInvertible()) throw SingularPoint("frame matrix singular at " + format_point(q));
  int begin = frame.layer_begin(j);
  int end = frame.layer_end(j);

  LayerCoords c = layer_coordinates(lu, m, target, begin, end, tol);
  if (!c.in_layer) {
    throw ValidationError("oracle target is not in D^" + std::to_string(j) + " at " +
                          format_point(q));
  }

  // Matrix of pi_j: column t is the layer-j class of word t.
  Eigen::MatrixXd w = frame.word_values(j, q);
  Eigen::MatrixXd pi(end - begin, w.cols());
  for (Eigen::Index t = 0; t < w.cols(); ++t) {
    LayerCoords wc = layer_coordinates(lu, m, w.col(t), begin, end, tol);
    if (!wc.in_layer) throw InternalInconsistency("bracket word leaves its layer in the oracle");
    pi.col(t) = wc.coords;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(pi, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd a = svd.solve(c.coords);
  if ((pi * a - c.coords).norm() > 1e-9 * std::max(c.coords.norm(), 1e-300)) {
    throw ValidationError("oracle system pi_j(a) = target is inconsistent at " + format_point(q));
  }
  return a.norm();
}

Eigen::MatrixXd oracle_gram(const AdaptedFrame& frame, const Point& q, int j) {
  Eigen::MatrixXd m = frame.values(q);
  int begin = frame.layer_begin(j);
  int d = frame.layer_end(j) - begin;
  Eigen::MatrixXd g(d, d);
  for (int l = 0; l < d; ++l) {
    Eigen::VectorXd el = m.col(begin + l);
    double nl = quotient_norm_oracle(frame, q, j, el);
    g(l, l) = nl * nl;
    for (int h = l + 1; h < d; ++h) {
      Eigen::VectorXd eh = m.col(begin + h);
      double plus = quotient_norm_oracle(frame, q, j, el + eh);
      double minus = quotient_norm_oracle(frame, q, j, el - eh);
      g(l, h) = g(h, l) = (plus * plus - minus * minus) / 4.0;
    }
  }
  return g;
}

double contact_invariant(const SRStructure& s, const VectorField& transversal, const Point& q,
                         const FlagOptions& opts) {
  const std::size_t n = s.dimension();
  const std::size_t k = s.rank();
  if (n != k + 1) throw ValidationError("contact invariant needs corank 1 (n = k + 1)");
  if (transversal.nvars() != n) throw ValidationError("transversal field has wrong dimension");
  s.check_horizontal(q, opts.rank_tol);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.leftCols(static_cast<Eigen::Index>(k)) = s.horizontal_values(q);
  m.col(static_cast<Eigen::Index>(k)) = CompiledField(transversal).eval(as_span(q));
  FrameSolver solver(m, opts.max_condition, opts.residual_tol);
  double sum = 0.0;
  double scale = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      Eigen::VectorXd v = CompiledField(lie_bracket(s.field(i), s.field(j))).eval(as_span(q));
      scale = std::max(scale, v.norm());
      double c0 = solver.solve(v)[static_cast<Eigen::Index>(k)];
      sum += c0 * c0;
    }
  }
  if (std::sqrt(sum) <= opts.rank_tol * scale) {
    throw NotBracketGenerating("all brackets of horizontal fields are horizontal at " +
                                   format_point(q),
                               static_cast<int>(k));
  }
  return sum;
}

}  // namespace popp
