#pragma once

#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "popp/flag.hpp"
#include "popp/maps.hpp"
#include "popp/structure.hpp"

namespace popp {

struct ReportOptions {
  FlagOptions flag;
  double fd_step = 1e-4;
  /// Cross-check every B_j^{-1} against the quotient-norm oracle.
  bool oracle = false;
  bool sublaplacian = true;
  /// Optional completion of the horizontal fields to an adapted frame;
  /// the greedy bracket frame is used when empty.
  std::vector<VectorField> completion;
};

/// Everything computed at one point. On failure only `q`, `error` and
/// `exit_code` are meaningful.
struct PointReport {
  Point q;
  GrowthVector growth;
  std::vector<int> layer_dims;  // k_i - k_{i-1}
  int hausdorff_dimension = 0;
  std::vector<std::string> frame;
  std::vector<double> det_b;  // det B_1 .. det B_m
  double density_adapted = 0.0;
  double density_coordinates = 0.0;
  double frame_condition = 0.0;
  std::vector<double> sublaplacian;  // a_1 .. a_k
  std::optional<double> oracle_deviation;
  std::vector<std::string> warnings;
  std::optional<std::string> error;
  int exit_code = 0;
};

PointReport popp_report(const SRStructure& s, const Point& q, const ReportOptions& opts);

/// Reports for all points, computed in parallel, in input order.
std::vector<PointReport> popp_reports(const SRStructure& s, const std::vector<Point>& points,
                                      const ReportOptions& opts);

/// Largest entrywise deviation |oracle_gram - B_j^{-1}| / max|B_j^{-1}| over j >= 2.
double oracle_deviation(const AdaptedFrame& frame, const Point& q,
                        const std::vector<Eigen::MatrixXd>& gram_blocks);

/// 2 for ValidationError, 3 for SingularPoint, 4 for InternalInconsistency,
/// 1 for anything else.
int exit_code_for(const std::exception& e);

nlohmann::json to_json(const PointReport& r);
nlohmann::json to_json(const IsometryReport& r);
nlohmann::json to_json(const VolumeReport& r);
nlohmann::json point_json(const Point& q);

std::string to_text(const PointReport& r);

}  // namespace popp
