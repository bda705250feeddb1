#include "popp/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "popp/errors.hpp"
#include "popp/parallel.hpp"
#include "popp/sublaplacian.hpp"
#include "popp/volume.hpp"

namespace popp {

namespace {

constexpr double kConditionWarning = 1e8;
constexpr double kOracleWarning = 1e-9;

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

template <class T>
std::string join(const std::vector<T>& v, const std::string& sep) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    if constexpr (std::is_floating_point_v<T>) {
      os << fmt(v[i]);
    } else {
      os << v[i];
    }
  }
  return os.str();
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InternalInconsistency*>(&e)) return 4;
  if (dynamic_cast<const SingularPoint*>(&e)) return 3;
  if (dynamic_cast<const ValidationError*>(&e)) return 2;
  return 1;
}

double oracle_deviation(const AdaptedFrame& frame, const Point& q,
                        const std::vector<Eigen::MatrixXd>& gram_blocks) {
  double worst = 0.0;
  for (int j = 2; j <= frame.step(); ++j) {
    const Eigen::MatrixXd& b = gram_blocks.at(static_cast<std::size_t>(j - 1));
    Eigen::MatrixXd inv = b.inverse();
    Eigen::MatrixXd oracle = oracle_gram(frame, q, j);
    double scale = inv.cwiseAbs().maxCoeff();
    worst = std::max(worst, (oracle - inv).cwiseAbs().maxCoeff() / scale);
  }
  return worst;
}

PointReport popp_report(const SRStructure& s, const Point& q, const ReportOptions& opts) {
  PointReport r;
  r.q = q;
  try {
    AdaptedFrame frame = opts.completion.empty()
                             ? adapted_frame(s, q, opts.flag)
                             : adapted_frame_with_completion(s, opts.completion, q, opts.flag);
    r.growth = frame.flag_dims;
    for (std::size_t i = 0; i < r.growth.size(); ++i)
      r.layer_dims.push_back(r.growth[i] - (i ? r.growth[i - 1] : 0));
    r.hausdorff_dimension = hausdorff_dimension(r.growth);
    for (const auto& f : frame.fields) r.frame.push_back(f.label);

    VolumeAtPoint vol = evaluate_volume(frame, q);
    r.det_b = vol.gram.determinants;
    r.density_adapted = vol.density_adapted;
    r.density_coordinates = vol.density_coordinates;
    r.frame_condition = vol.frame_condition;
    if (vol.frame_condition > kConditionWarning)
      r.warnings.push_back("adapted frame condition number " + fmt(vol.frame_condition));

    if (opts.oracle) {
      r.oracle_deviation = oracle_deviation(frame, q, vol.gram.blocks);
      if (*r.oracle_deviation > kOracleWarning)
        r.warnings.push_back("quotient-norm oracle deviates from B_j^-1 by " + fmt(*r.oracle_deviation));
    }
    if (opts.sublaplacian) {
      SublaplacianEngine engine(std::move(frame), {opts.fd_step});
      SublaplacianData d = engine.coefficients(q);
      r.sublaplacian = d.coefficients;
      for (auto& w : d.warnings) r.warnings.push_back(std::move(w));
    }
    for (double v : {r.density_adapted, r.density_coordinates}) {
      if (!std::isfinite(v) || v <= 0.0)
        throw InternalInconsistency("Popp density is not a positive finite number at " + format_point(q));
    }
  } catch (const Error& e) {
    r.error = e.what();
    r.exit_code = exit_code_for(e);
  }
  return r;
}

std::vector<PointReport> popp_reports(const SRStructure& s, const std::vector<Point>& points,
                                      const ReportOptions& opts) {
  return parallel_map(points.size(), [&](std::size_t i) { return popp_report(s, points[i], opts); });
}

nlohmann::json point_json(const Point& q) { return std::vector<double>(q.data(), q.data() + q.size()); }

nlohmann::json to_json(const PointReport& r) {
  nlohmann::json j;
  j["point"] = point_json(r.q);
  if (r.error) {
    j["error"] = *r.error;
    j["exit_code"] = r.exit_code;
    return j;
  }
  j["growth_vector"] = r.growth;
  j["flag_dims"] = r.layer_dims;
  j["hausdorff_dimension"] = r.hausdorff_dimension;
  j["frame"] = r.frame;
  j["det_B"] = r.det_b;
  j["popp_density_adapted"] = r.density_adapted;
  j["popp_density_coordinates"] = r.density_coordinates;
  j["frame_condition"] = r.frame_condition;
  j["sublaplacian_coefficients"] = r.sublaplacian;
  j["oracle_deviation"] = r.oracle_deviation ? nlohmann::json(*r.oracle_deviation) : nlohmann::json();
  j["warnings"] = r.warnings;
  return j;
}

nlohmann::json to_json(const IsometryReport& r) {
  nlohmann::json j;
  j["passed"] = r.passed;
  j["preserves_distribution"] = r.preserves_distribution;
  j["preserves_metric"] = r.preserves_metric;
  j["max_span_residual"] = r.max_span_residual;
  j["max_gram_error"] = r.max_gram_error;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : r.points) {
    nlohmann::json pj;
    pj["point"] = point_json(p.q);
    if (p.error) {
      pj["error"] = *p.error;
    } else {
      pj["span_residual"] = p.span_residual;
      pj["gram_error"] = p.gram_error;
      nlohmann::json rows = nlohmann::json::array();
      for (Eigen::Index i = 0; i < p.gram.rows(); ++i) {
        Eigen::VectorXd row = p.gram.row(i);
        rows.push_back(point_json(row));
      }
      pj["gram"] = rows;
    }
    pts.push_back(pj);
  }
  j["points"] = pts;
  return j;
}

nlohmann::json to_json(const VolumeReport& r) {
  nlohmann::json j;
  j["passed"] = r.passed;
  j["max_relative_error"] = r.max_relative_error;
  j["volume_factor"] = r.first_ratio;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : r.points) {
    nlohmann::json pj;
    pj["point"] = point_json(p.q);
    if (p.error) {
      pj["error"] = *p.error;
    } else {
      pj["density"] = p.density_at_q;
      pj["density_at_image"] = p.density_at_image;
      pj["jacobian_abs_det"] = p.jacobian_abs_det;
      pj["relative_error"] = p.relative_error;
    }
    pts.push_back(pj);
  }
  j["points"] = pts;
  return j;
}

std::string to_text(const PointReport& r) {
  std::ostringstream os;
  os << "point " << format_point(r.q) << "\n";
  if (r.error) {
    os << "  error: " << *r.error << "\n";
    return os.str();
  }
  os << "  growth vector     (" << join(r.growth, ", ") << "), Q = " << r.hausdorff_dimension << "\n";
  os << "  adapted frame     " << join(r.frame, ", ") << "\n";
  os << "  det B_j           " << join(r.det_b, ", ") << "\n";
  os << "  density (adapted) " << fmt(r.density_adapted) << "\n";
  os << "  density (coords)  " << fmt(r.density_coordinates) << "\n";
  if (!r.sublaplacian.empty()) os << "  sub-Laplacian a_i (" << join(r.sublaplacian, ", ") << ")\n";
  if (r.oracle_deviation) os << "  oracle deviation  " << fmt(*r.oracle_deviation) << "\n";
  for (const auto& w : r.warnings) os << "  warning: " << w << "\n";
  return os.str();
}

}  // namespace popp
