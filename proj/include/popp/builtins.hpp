#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "popp/maps.hpp"
#include "popp/structure.hpp"
#include "popp/vector_field.hpp"

namespace popp {

/// A shipped example structure with what the tests and CLI need around it.
struct Builtin {
  SRStructure structure;
  /// Two alternative completions of the horizontal fields to an adapted frame.
  std::vector<std::vector<VectorField>> completions;
  /// Field transversal to D for corank-1 structures.
  std::optional<VectorField> transversal;
  /// Left-invariant structure on a Carnot group; `translation` is set iff true.
  bool carnot = false;
  /// Left translation by the group element with the given exponential
  /// coordinates.
  std::function<PolyMap(const std::vector<Coefficient>&)> translation;
  /// Whether q lies on the singular locus (non-equiregular points).
  std::function<bool(const Point&)> singular;
};

/// Names accepted by builtin(): heisenberg, martinet, engel, carnot-k3.
std::vector<std::string> builtin_names();

/// Throws ValidationError for unknown names.
Builtin builtin(const std::string& name);

/// Heisenberg dilation (x, y, z) -> (2x, 2y, 4z).
PolyMap heisenberg_dilation();

/// Translation by a group element given as numeric coordinates.
PolyMap translation_by(const Builtin& b, const Point& g);

/// Deterministic pseudo-random points away from the singular locus:
/// coordinates uniform in [-2, 2], except that for Martinet |y| is drawn
/// from [0.1, 2] with random sign.
std::vector<Point> builtin_sample(const Builtin& b, std::size_t count, std::uint64_t seed);

}  // namespace popp
