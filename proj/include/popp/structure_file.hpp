#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "popp/builtins.hpp"
#include "popp/maps.hpp"
#include "popp/structure.hpp"

namespace popp {

/// Parsed structure definition file (TOML):
///
///   name = "heisenberg"
///   dimension = 3
///   variables = ["x", "y", "z"]            # optional
///   fields = [["1", "0", "-1/2*y"], ...]   # k horizontal fields
///   completion = [["0", "0", "1"]]         # optional adapted-frame hint
///   transversal = ["0", "0", "1"]          # optional, corank 1 only
///   points = [[1, 2, 3]]                   # optional
///   grid = "-1:1:5,-1:1:5,-1:1:5"          # optional
///   [[maps]]                               # optional, repeatable
///   name = "..."; forward = [...]; inverse = [...]
struct StructureFile {
  SRStructure structure;
  std::vector<VectorField> completion;
  std::optional<VectorField> transversal;
  std::vector<Point> points;
  std::optional<std::string> grid;
  std::vector<PolyMap> maps;
};

/// Parses file text; `source` names the file in error messages, which
/// carry line numbers and field/component indices. Throws ValidationError.
StructureFile parse_structure_file(std::string_view text, const std::string& source = "<input>");
StructureFile load_structure_file(const std::string& path);

/// Canonical text: polynomials in canonical form, keys in a fixed order.
/// Parsing the output yields an equal StructureFile.
std::string serialize_structure_file(const StructureFile& f);

/// Structure file for a builtin: its fields, first completion and
/// transversal. Translations are not included.
StructureFile builtin_file(const Builtin& b);

/// Grid "start:stop:count,..." with one axis spec per coordinate; points in
/// row-major order (last axis fastest).
std::vector<Point> parse_grid(const std::string& spec, std::size_t dimension);

/// "x,y,..." -> point; throws ValidationError on malformed numbers.
Point parse_point(const std::string& text, std::size_t dimension);

}  // namespace popp
