#include "popp/flag.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "popp/errors.hpp"
#include "popp/linalg.hpp"

namespace popp {

namespace {

std::string bracket_label(const std::vector<int>& idx) {
  std::string s = "X" + std::to_string(idx.back() + 1);
  for (auto it = idx.rbegin() + 1; it != idx.rend(); ++it) {
    s = "[X" + std::to_string(*it + 1) + "," + s + "]";
  }
  return s;
}

Eigen::MatrixXd hcat(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

void require_strict(const GrowthVector& g, const Point& q) {
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (g[i] <= g[i - 1]) {
      throw SingularPoint("growth vector " + format_growth(g) + " stalls at " + format_point(q) +
                          ": point lies on a non-equiregular stratum");
    }
  }
}

void require_conditioned(const Eigen::MatrixXd& m, const Point& q, double max_condition) {
  double c = condition_number(m);
  if (!(c <= max_condition)) {
    std::ostringstream os;
    os << "adapted frame at " << format_point(q) << " is ill-conditioned (condition number " << c
       << ")";
    throw SingularPoint(os.str());
  }
}

AdaptedFrame make_frame(const SRStructure& s, const BracketTable& table, const Point& q,
                        GrowthVector g, std::vector<FrameField> fields, const FlagOptions& opts) {
  AdaptedFrame frame{s.dimension(), s.rank(), q, std::move(g), std::move(fields), {}, opts};
  for (int j = 1; j <= frame.step(); ++j) frame.words.push_back(table.level(j));
  require_conditioned(frame.values(q), q, opts.max_condition);
  return frame;
}

}  // namespace

std::string BracketWord::label() const {
  std::string s = "(";
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(indices[i] + 1);
  }
  return s + ")";
}

BracketTable::BracketTable(const SRStructure& s) : n_(s.dimension()), k_(s.rank()) {
  std::vector<BracketWord> first;
  for (std::size_t i = 0; i < k_; ++i) {
    const VectorField& x = s.field(i);
    first.push_back(BracketWord{{static_cast<int>(i)}, x, CompiledField(x)});
  }
  levels_.push_back(std::move(first));
}

void BracketTable::extend_to(int depth) {
  while (this->depth() < depth) {
    const auto& prev = levels_.back();
    const auto& horizontal = levels_.front();
    std::vector<BracketWord> next;
    next.reserve(prev.size() * k_);
    for (std::size_t i = 0; i < k_; ++i) {
      for (const auto& w : prev) {
        std::vector<int> idx{static_cast<int>(i)};
        idx.insert(idx.end(), w.indices.begin(), w.indices.end());
        VectorField realized = lie_bracket(horizontal[i].realized, w.realized);
        CompiledField compiled(realized);
        next.push_back(BracketWord{std::move(idx), std::move(realized), std::move(compiled)});
      }
    }
    levels_.push_back(std::move(next));
  }
}

const std::vector<BracketWord>& BracketTable::level(int length) const {
  if (length < 1 || length > depth()) throw ValidationError("bracket level out of range");
  return levels_[static_cast<std::size_t>(length - 1)];
}

Eigen::MatrixXd BracketTable::values(int length, const Point& q) const {
  const auto& words = level(length);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(words.size()));
  for (std::size_t c = 0; c < words.size(); ++c)
    words[c].compiled.eval_into(as_span(q), m.col(static_cast<Eigen::Index>(c)));
  return m;
}

GrowthVector growth_vector(const SRStructure& s, const Point& q, const FlagOptions& opts) {
  BracketTable table(s);
  return growth_vector(s, table, q, opts);
}

GrowthVector growth_vector(const SRStructure& s, BracketTable& table, const Point& q,
                           const FlagOptions& opts) {
  s.check_horizontal(q, opts.rank_tol);
  const int n = static_cast<int>(s.dimension());
  GrowthVector g{static_cast<int>(s.rank())};
  Eigen::MatrixXd cumulative = table.values(1, q);
  int rank = g.back();
  for (int j = 2; j <= opts.max_depth; ++j) {
    table.extend_to(j);
    cumulative = hcat(cumulative, table.values(j, q));
    rank = numerical_rank(cumulative, opts.rank_tol);
    g.push_back(rank);
    if (rank == n) return g;
  }
  throw NotBracketGenerating("brackets of length <= " + std::to_string(opts.max_depth) +
                                 " span only rank " + std::to_string(rank) + " at " +
                                 format_point(q),
                             rank);
}

int hausdorff_dimension(const GrowthVector& dims) {
  if (dims.empty()) throw ValidationError("empty growth vector");
  int q = 0;
  int prev = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < prev) throw ValidationError("growth vector must be non-decreasing");
    q += static_cast<int>(i + 1) * (dims[i] - prev);
    prev = dims[i];
  }
  return q;
}

Eigen::MatrixXd AdaptedFrame::values(const Point& q) const {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(dimension), static_cast<Eigen::Index>(fields.size()));
  for (std::size_t c = 0; c < fields.size(); ++c)
    fields[c].compiled.eval_into(as_span(q), m.col(static_cast<Eigen::Index>(c)));
  return m;
}

Eigen::MatrixXd AdaptedFrame::word_values(int level, const Point& q) const {
  if (level < 1 || level > step()) throw ValidationError("word level out of range");
  const auto& ws = words[static_cast<std::size_t>(level - 1)];
  Eigen::MatrixXd m(static_cast<Eigen::Index>(dimension), static_cast<Eigen::Index>(ws.size()));
  for (std::size_t c = 0; c < ws.size(); ++c)
    ws[c].compiled.eval_into(as_span(q), m.col(static_cast<Eigen::Index>(c)));
  return m;
}

AdaptedFrame adapted_frame(const SRStructure& s, const Point& q, const FlagOptions& opts) {
  BracketTable table(s);
  GrowthVector g = growth_vector(s, table, q, opts);
  require_strict(g, q);

  std::vector<FrameField> fields;
  Eigen::MatrixXd kept(static_cast<Eigen::Index>(s.dimension()), 0);
  for (int j = 1; j <= static_cast<int>(g.size()); ++j) {
    int before = static_cast<int>(fields.size());
    for (const auto& w : table.level(j)) {
      Eigen::MatrixXd candidate = hcat(kept, w.compiled.eval(as_span(q)));
      // Horizontal fields are independent (checked by growth_vector) and
      // are kept unconditionally so the frame starts with X_1..X_k.
      if (j > 1 && numerical_rank(candidate, opts.rank_tol) <= kept.cols()) continue;
      kept = std::move(candidate);
      fields.push_back(FrameField{w.indices, w.realized, w.compiled, j, bracket_label(w.indices)});
      if (static_cast<int>(fields.size()) == g[static_cast<std::size_t>(j - 1)]) break;
    }
    int added = static_cast<int>(fields.size()) - before;
    int expected = g[static_cast<std::size_t>(j - 1)] - (j == 1 ? 0 : g[static_cast<std::size_t>(j - 2)]);
    if (added != expected) {
      throw SingularPoint("greedy frame selection found " + std::to_string(added) +
                          " fields at level " + std::to_string(j) + ", growth vector expects " +
                          std::to_string(expected) + " at " + format_point(q));
    }
  }
  return make_frame(s, table, q, std::move(g), std::move(fields), opts);
}

AdaptedFrame adapted_frame_with_completion(const SRStructure& s,
                                           const std::vector<VectorField>& completion,
                                           const Point& q, const FlagOptions& opts) {
  BracketTable table(s);
  GrowthVector g = growth_vector(s, table, q, opts);
  require_strict(g, q);
  const std::size_t n = s.dimension();
  if (completion.size() + s.rank() != n) {
    throw ValidationError("completion must supply exactly n - k = " +
                          std::to_string(n - s.rank()) + " fields");
  }

  std::vector<Eigen::MatrixXd> cumulative;
  cumulative.push_back(table.values(1, q));
  for (int j = 2; j <= static_cast<int>(g.size()); ++j)
    cumulative.push_back(hcat(cumulative.back(), table.values(j, q)));

  std::vector<FrameField> extra;
  for (std::size_t c = 0; c < completion.size(); ++c) {
    const auto& field = completion[c];
    if (field.nvars() != n) throw ValidationError("completion field has wrong dimension");
    CompiledField compiled(field);
    Eigen::VectorXd v = compiled.eval(as_span(q));
    int level = 0;
    for (int j = 1; j <= static_cast<int>(g.size()); ++j) {
      if (numerical_rank(hcat(cumulative[j - 1], v), opts.rank_tol) == g[j - 1]) {
        level = j;
        break;
      }
    }
    if (level <= 1) {
      throw SingularPoint("completion field " + std::to_string(c + 1) +
                          " is horizontal at " + format_point(q));
    }
    extra.push_back(FrameField{std::nullopt, field, std::move(compiled), level,
                               "C" + std::to_string(c + 1)});
  }
  std::stable_sort(extra.begin(), extra.end(),
                   [](const FrameField& a, const FrameField& b) { return a.level < b.level; });
  for (int j = 2; j <= static_cast<int>(g.size()); ++j) {
    auto count = std::count_if(extra.begin(), extra.end(),
                               [j](const FrameField& f) { return f.level == j; });
    if (count != g[j - 1] - g[j - 2]) {
      throw ValidationError("completion supplies " + std::to_string(count) +
                            " fields in layer " + std::to_string(j) + ", growth vector " +
                            format_growth(g) + " requires " + std::to_string(g[j - 1] - g[j - 2]));
    }
  }

  std::vector<FrameField> fields;
  for (const auto& w : table.level(1))
    fields.push_back(FrameField{w.indices, w.realized, w.compiled, 1, bracket_label(w.indices)});
  for (auto& f : extra) fields.push_back(std::move(f));
  return make_frame(s, table, q, std::move(g), std::move(fields), opts);
}

EquiregularReport check_equiregular(const SRStructure& s, const std::vector<Point>& sample,
                                    const FlagOptions& opts) {
  EquiregularReport report;
  BracketTable table(s);
  std::map<GrowthVector, std::size_t> index;
  for (const auto& q : sample) {
    try {
      GrowthVector g = growth_vector(s, table, q, opts);
      auto [it, inserted] = index.try_emplace(g, report.strata.size());
      if (inserted) report.strata.push_back({g, {}});
      report.strata[it->second].points.push_back(q);
    } catch (const Error& e) {
      report.failures.push_back({q, e.what()});
    }
  }
  report.equiregular = report.strata.size() == 1 && report.failures.empty();
  return report;
}

std::string format_growth(const GrowthVector& g) {
  std::string s = "(";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(g[i]);
  }
  return s + ")";
}

}  // namespace popp
