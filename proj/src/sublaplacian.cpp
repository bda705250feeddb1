#include "popp/sublaplacian.hpp"

#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "popp/errors.hpp"
#include "popp/linalg.hpp"

namespace popp {

SublaplacianEngine::SublaplacianEngine(AdaptedFrame frame, SublaplacianOptions opts)
    : k_(frame.rank), frame_(std::move(frame)), opts_(opts) {
  if (!(opts_.fd_step > 0.0)) throw ValidationError("finite-difference step must be positive");
  const std::size_t n = frame_.fields.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pair_brackets_.emplace_back(lie_bracket(frame_.fields[i].field, frame_.fields[j].field));
    }
  }
}

StructureConstants SublaplacianEngine::structure_constants(const Point& q) const {
  const std::size_t n = frame_.fields.size();
  FrameSolver solver(frame_.values(q), frame_.options.max_condition, frame_.options.residual_tol);
  StructureConstants c(n);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++idx) {
      Eigen::VectorXd a = solver.solve(pair_brackets_[idx].eval(as_span(q)));
      for (std::size_t l = 0; l < n; ++l) {
        c.at(i, j, l) = a[static_cast<Eigen::Index>(l)];
        c.at(j, i, l) = -a[static_cast<Eigen::Index>(l)];
      }
    }
  }
  return c;
}

double SublaplacianEngine::trace_against(const std::vector<Eigen::MatrixXd>& inverse_at_q,
                                         const Point& p) const {
  VolumeAtPoint vol = evaluate_volume(frame_, p);
  double t = 0.0;
  // B_1 is the identity everywhere and contributes nothing to derivatives.
  for (std::size_t j = 1; j < vol.gram.blocks.size(); ++j) {
    t += inverse_at_q[j].cwiseProduct(vol.gram.blocks[j]).sum();
  }
  return t;
}

DivergenceResult SublaplacianEngine::frame_divergence(const Point& q, std::size_t i) const {
  return frame_divergence(q, i, structure_constants(q));
}

DivergenceResult SublaplacianEngine::frame_divergence(const Point& q, std::size_t i,
                                                      const StructureConstants& c) const {
  const std::size_t n = frame_.fields.size();
  if (i >= n) throw ValidationError("frame field index out of range");
  VolumeAtPoint vol = evaluate_volume(frame_, q);
  std::vector<Eigen::MatrixXd> inverse;
  for (const auto& b : vol.gram.blocks) inverse.push_back(b.llt().solve(Eigen::MatrixXd::Identity(b.rows(), b.cols())));

  Eigen::VectorXd dir = frame_.fields[i].compiled.eval(as_span(q));
  const double h = opts_.fd_step * (q.norm() + 1.0);
  auto central = [&](double step) {
    try {
      Point plus = q + step * dir;
      Point minus = q - step * dir;
      return (trace_against(inverse, plus) - trace_against(inverse, minus)) / (2.0 * step);
    } catch (const Error& e) {
      throw SingularPoint(std::string("finite-difference stencil at ") + format_point(q) +
                          " reaches a singular region: " + e.what());
    }
  };
  double d1 = central(h);
  double d2 = central(h / 2.0);
  double d4 = central(h / 4.0);
  double r1 = (4.0 * d2 - d1) / 3.0;
  double r2 = (4.0 * d4 - d2) / 3.0;

  double trace_c = 0.0;
  for (std::size_t l = 0; l < n; ++l) trace_c += c(i, l, l);

  double value = -(0.5 * r1 + trace_c) + 0.0;  // no -0 in reports
  double crosscheck = std::abs(r1 - r2);
  bool accurate = crosscheck <= opts_.fd_agreement * std::max(1.0, std::abs(r1));
  return {value, crosscheck, accurate};
}

SublaplacianData SublaplacianEngine::coefficients(const Point& q) const {
  StructureConstants c = structure_constants(q);
  SublaplacianData out{q, c, {}, {}, {}};
  for (std::size_t i = 0; i < k_; ++i) {
    DivergenceResult d = frame_divergence(q, i, c);
    out.divergences.push_back(d.value);
    out.coefficients.push_back(d.value);
    if (!d.accurate) {
      std::ostringstream os;
      os << "finite-difference estimate of X_" << i + 1 << "(B) at " << format_point(q)
         << " changes by " << d.crosscheck << " when the step is halved";
      out.warnings.push_back(os.str());
    }
  }
  return out;
}

double SublaplacianEngine::apply(const Poly& f, const Point& q) const {
  SublaplacianData data = coefficients(q);
  std::span<const double> qs = as_span(q);
  double sum = 0.0;
  for (std::size_t i = 0; i < k_; ++i) {
    const VectorField& x = frame_.fields[i].field;
    Poly xf = directional_derivative(x, f);
    Poly xxf = directional_derivative(x, xf);
    sum += xxf.eval(qs) + data.coefficients[i] * xf.eval(qs);
  }
  return sum;
}

std::pair<double, double> SublaplacianEngine::symmetry_check(const Poly& f, const Poly& g,
                                                             const Box& box, int cells) const {
  const std::size_t n = frame_.dimension;
  if (box.lower.size() != n || box.upper.size() != n)
    throw ValidationError("integration box has wrong dimension");
  if (cells < 1) throw ValidationError("need at least one cell per axis");
  if (f.nvars() != n || g.nvars() != n) throw ValidationError("integrand has wrong dimension");

  std::vector<CompiledPoly> xf;
  std::vector<CompiledPoly> xg;
  Poly second_g(n);
  for (std::size_t i = 0; i < k_; ++i) {
    const VectorField& x = frame_.fields[i].field;
    Poly dg = directional_derivative(x, g);
    second_g += directional_derivative(x, dg);
    xf.emplace_back(directional_derivative(x, f));
    xg.emplace_back(dg);
  }
  CompiledPoly fc(f);
  CompiledPoly second(second_g);

  std::vector<double> width(n);
  double cell_volume = 1.0;
  for (std::size_t a = 0; a < n; ++a) {
    width[a] = (box.upper[a] - box.lower[a]) / cells;
    cell_volume *= width[a];
  }
  std::size_t total = 1;
  for (std::size_t a = 0; a < n; ++a) total *= static_cast<std::size_t>(cells);

  std::vector<double> lhs(total);
  std::vector<double> rhs(total);
  auto work = [&](std::size_t begin, std::size_t end) {
    Point p(static_cast<Eigen::Index>(n));
    for (std::size_t node = begin; node < end; ++node) {
      std::size_t rest = node;
      for (std::size_t a = n; a-- > 0;) {
        std::size_t idx = rest % static_cast<std::size_t>(cells);
        rest /= static_cast<std::size_t>(cells);
        p[static_cast<Eigen::Index>(a)] = box.lower[a] + (static_cast<double>(idx) + 0.5) * width[a];
      }
      std::span<const double> ps = as_span(p);
      double rho = evaluate_volume(frame_, p).density_coordinates;
      SublaplacianData data = coefficients(p);
      double lap = second.eval(ps);
      double grad_dot = 0.0;
      for (std::size_t i = 0; i < k_; ++i) {
        double gi = xg[i].eval(ps);
        lap += data.coefficients[i] * gi;
        grad_dot += xf[i].eval(ps) * gi;
      }
      lhs[node] = fc.eval(ps) * lap * rho * cell_volume;
      rhs[node] = -grad_dot * rho * cell_volume;
    }
  };

  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, total);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  std::size_t chunk = (total + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    std::size_t begin = t * chunk;
    std::size_t end = std::min(total, begin + chunk);
    pool.emplace_back([&, t, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return {pairwise_sum(lhs), pairwise_sum(rhs)};
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

StructureConstants structure_constants(const AdaptedFrame& frame, const Point& q) {
  return SublaplacianEngine(frame).structure_constants(q);
}

namespace {

SublaplacianEngine engine_for(const SRStructure& s, const AdaptedFrame& frame, double fd_step) {
  if (frame.dimension != s.dimension() || frame.rank != s.rank())
    throw ValidationError("frame does not belong to structure '" + s.name() + "'");
  return SublaplacianEngine(frame, {fd_step});
}

}  // namespace

std::vector<double> gradient(const SRStructure& s, const Poly& f, const Point& q) {
  s.check_point(q);
  std::vector<double> out;
  for (const auto& x : s.horizontal()) out.push_back(directional_derivative(x, f).eval(as_span(q)));
  return out;
}

DivergenceResult frame_divergence(const SRStructure& s, const AdaptedFrame& frame, const Point& q,
                                  std::size_t i, double fd_step) {
  return engine_for(s, frame, fd_step).frame_divergence(q, i);
}

SublaplacianData sublaplacian_coeffs(const SRStructure& s, const AdaptedFrame& frame,
                                     const Point& q, double fd_step) {
  return engine_for(s, frame, fd_step).coefficients(q);
}

double apply_sublaplacian(const SRStructure& s, const AdaptedFrame& frame, const Poly& f,
                          const Point& q, double fd_step) {
  return engine_for(s, frame, fd_step).apply(f, q);
}

std::pair<double, double> symmetry_check(const SRStructure& s, const AdaptedFrame& frame,
                                         const Poly& f, const Poly& g, const Box& box, int cells,
                                         double fd_step) {
  return engine_for(s, frame, fd_step).symmetry_check(f, g, box, cells);
}

}  // namespace popp
