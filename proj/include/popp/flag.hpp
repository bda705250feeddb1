#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "popp/compiled.hpp"
#include "popp/structure.hpp"
#include "popp/vector_field.hpp"

namespace popp {

struct FlagOptions {
  /// Relative singular value threshold for numerical ranks.
  double rank_tol = 1e-9;
  /// Longest bracket word tried before declaring the structure not
  /// bracket generating at a point.
  int max_depth = 8;
  /// Frames whose value matrix is worse conditioned are rejected.
  double max_condition = 1e12;
  /// Relative residual bound for every pointwise frame solve.
  double residual_tol = 1e-9;
};

/// Right-nested bracket [X_{i1},[X_{i2},...,[X_{i(j-1)},X_{ij}]]] of
/// horizontal fields. `indices` are 0-based; label() prints them 1-based.
struct BracketWord {
  std::vector<int> indices;
  VectorField realized;
  CompiledField compiled;

  int length() const { return static_cast<int>(indices.size()); }
  std::string label() const;
};

/// All right-nested words of a structure, grouped by length, each level in
/// lexicographic order of the index tuple. Levels are built on demand by
/// extend_to(); a table is owned by one caller at a time.
class BracketTable {
 public:
  explicit BracketTable(const SRStructure& s);

  void extend_to(int depth);
  int depth() const { return static_cast<int>(levels_.size()); }
  /// Words of the given length (1-based); requires length <= depth().
  const std::vector<BracketWord>& level(int length) const;
  /// n x k^length matrix of word values at q.
  Eigen::MatrixXd values(int length, const Point& q) const;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<std::vector<BracketWord>> levels_;
};

using GrowthVector = std::vector<int>;

/// Growth vector (k_1, ..., k_m) at q. k_i is the numerical rank of the
/// values of all words of length <= i; stops at the first i with k_i = n.
/// Throws RankDeficientHorizontal or NotBracketGenerating.
GrowthVector growth_vector(const SRStructure& s, const Point& q, const FlagOptions& opts = {});
GrowthVector growth_vector(const SRStructure& s, BracketTable& table, const Point& q,
                           const FlagOptions& opts = {});

/// Q = sum_i i * (k_i - k_{i-1}).
int hausdorff_dimension(const GrowthVector& dims);

struct FrameField {
  /// Set when the field is a bracket word; unset for supplied completions.
  std::optional<std::vector<int>> word;
  VectorField field;
  CompiledField compiled;
  /// Index i of the layer D^i / D^{i-1} this field represents.
  int level;
  std::string label;
};

/// n fields whose first k_i span D^i at the basepoint, the first k being
/// the horizontal fields in order. The fields are global polynomial fields;
/// adaptedness is certified at the basepoint (and holds on a neighbourhood).
/// Also carries every horizontal bracket word up to the step, since the
/// adapted structure constants are read off from them.
struct AdaptedFrame {
  std::size_t dimension;
  std::size_t rank;
  Point basepoint;
  GrowthVector flag_dims;
  std::vector<FrameField> fields;
  std::vector<std::vector<BracketWord>> words;  // words[j-1]: all words of length j
  FlagOptions options;

  int step() const { return static_cast<int>(flag_dims.size()); }
  /// First (0-based) frame index of layer `level` (1-based).
  int layer_begin(int level) const { return level == 1 ? 0 : flag_dims[level - 2]; }
  int layer_end(int level) const { return flag_dims[level - 1]; }

  /// n x n matrix of frame field values at q (columns in frame order).
  Eigen::MatrixXd values(const Point& q) const;
  /// n x k^level matrix of word values at q.
  Eigen::MatrixXd word_values(int level, const Point& q) const;
};

/// Greedy adapted frame: words are scanned by length then lexicographically,
/// and a word is kept iff it raises the numerical rank of the kept set.
/// Throws SingularPoint when the growth vector stalls (non-equiregular
/// point) or the resulting frame is ill-conditioned.
AdaptedFrame adapted_frame(const SRStructure& s, const Point& q, const FlagOptions& opts = {});

/// Adapted frame from the horizontal fields plus user-supplied completion
/// fields. Each completion field is assigned the smallest layer containing
/// its value at q; the counts per layer must match the growth vector.
AdaptedFrame adapted_frame_with_completion(const SRStructure& s,
                                           const std::vector<VectorField>& completion,
                                           const Point& q, const FlagOptions& opts = {});

struct EquiregularReport {
  struct Stratum {
    GrowthVector growth;
    std::vector<Point> points;
  };
  struct Failure {
    Point point;
    std::string message;
  };
  std::vector<Stratum> strata;
  std::vector<Failure> failures;
  bool equiregular = false;
};

EquiregularReport check_equiregular(const SRStructure& s, const std::vector<Point>& sample,
                                    const FlagOptions& opts = {});

std::string format_growth(const GrowthVector& g);

}  // namespace popp
