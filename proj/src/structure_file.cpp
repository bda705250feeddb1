#include "popp/structure_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "popp/errors.hpp"
#include "popp/poly_parser.hpp"

namespace popp {

namespace {

class Context {
 public:
  explicit Context(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const toml::node* node, const std::string& what) const {
    std::ostringstream os;
    os << source_;
    if (node && node->source().begin.line > 0) os << ":" << node->source().begin.line;
    os << ": " << what;
    throw ValidationError(os.str());
  }

  [[noreturn]] void fail(const toml::node& node, const std::string& what) const { fail(&node, what); }

 private:
  std::string source_;
};

const toml::array& require_array(const Context& ctx, const toml::node& node, const std::string& what) {
  const toml::array* arr = node.as_array();
  if (!arr) ctx.fail(node, what + " must be an array");
  return *arr;
}

std::string require_string(const Context& ctx, const toml::node& node, const std::string& what) {
  auto s = node.value<std::string>();
  if (!s) ctx.fail(node, what + " must be a string");
  return *s;
}

Poly parse_component(const Context& ctx, const toml::node& node, std::size_t n,
                     const std::vector<std::string>& names, const std::string& what) {
  std::string text = require_string(ctx, node, what);
  try {
    return parse_poly(text, n, names);
  } catch (const ValidationError& e) {
    ctx.fail(node, what + ": " + e.what());
  }
}

std::vector<Poly> parse_components(const Context& ctx, const toml::node& node, std::size_t n,
                                   const std::vector<std::string>& names, const std::string& what) {
  const toml::array& arr = require_array(ctx, node, what);
  if (arr.size() != n) {
    ctx.fail(node, what + " has " + std::to_string(arr.size()) + " components, expected " +
                       std::to_string(n));
  }
  std::vector<Poly> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(parse_component(ctx, arr[i], n, names, what + " component " + std::to_string(i + 1)));
  }
  return out;
}

std::vector<VectorField> parse_field_list(const Context& ctx, const toml::node& node, std::size_t n,
                                          const std::vector<std::string>& names,
                                          const std::string& what) {
  const toml::array& arr = require_array(ctx, node, what);
  std::vector<VectorField> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.emplace_back(parse_components(ctx, arr[i], n, names, what + " " + std::to_string(i + 1)));
  }
  return out;
}

double require_number(const Context& ctx, const toml::node& node, const std::string& what) {
  if (auto v = node.value_exact<double>()) return *v;
  if (auto v = node.value_exact<std::int64_t>()) return static_cast<double>(*v);
  ctx.fail(node, what + " must be a number");
}

std::vector<std::string> parse_names(const Context& ctx, const toml::node& node, std::size_t n) {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  const toml::array& arr = require_array(ctx, node, "variables");
  if (arr.size() != n) ctx.fail(node, "variables must list exactly `dimension` names");
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    std::string name = require_string(ctx, arr[i], "variable name");
    if (!std::regex_match(name, ident) || name == "sqrt")
      ctx.fail(arr[i], "invalid variable name '" + name + "'");
    if (!seen.insert(name).second) ctx.fail(arr[i], "duplicate variable name '" + name + "'");
    out.push_back(std::move(name));
  }
  return out;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".en") == std::string::npos) s += ".0";
  return s;
}

std::string components_text(const std::vector<Poly>& polys, const std::vector<std::string>& names) {
  std::string out = "[";
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (i) out += ", ";
    out += quoted(polys[i].to_string(names));
  }
  return out + "]";
}

std::string field_list_text(const std::vector<VectorField>& fields,
                            const std::vector<std::string>& names) {
  std::string out = "[\n";
  for (const auto& f : fields) out += "  " + components_text(f.components(), names) + ",\n";
  return out + "]";
}

}  // namespace

StructureFile parse_structure_file(std::string_view text, const std::string& source) {
  Context ctx(source);
  toml::table root;
  try {
    root = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream os;
    os << source << ":" << e.source().begin.line << ": " << e.description();
    throw ValidationError(os.str());
  }

  static const std::set<std::string> known{"name",        "dimension", "variables", "fields",
                                           "completion",  "transversal", "points",  "grid",
                                           "maps"};
  for (const auto& [key, node] : root) {
    if (!known.count(std::string(key.str()))) ctx.fail(node, "unknown key '" + std::string(key.str()) + "'");
  }

  std::string name = "structure";
  if (const toml::node* n = root.get("name")) name = require_string(ctx, *n, "name");

  const toml::node* dim_node = root.get("dimension");
  if (!dim_node) ctx.fail(nullptr, "missing required key 'dimension'");
  auto dim = dim_node->value_exact<std::int64_t>();
  if (!dim || *dim < 3 || *dim > 64) ctx.fail(dim_node, "dimension must be an integer in 3..64");
  const auto n = static_cast<std::size_t>(*dim);

  std::vector<std::string> names = default_variable_names(n);
  if (const toml::node* v = root.get("variables")) names = parse_names(ctx, *v, n);

  const toml::node* fields_node = root.get("fields");
  if (!fields_node) ctx.fail(nullptr, "missing required key 'fields'");
  std::vector<VectorField> horizontal = parse_field_list(ctx, *fields_node, n, names, "field");
  if (horizontal.empty() || horizontal.size() >= n)
    ctx.fail(fields_node, "need between 1 and dimension-1 horizontal fields");

  std::optional<SRStructure> structure;
  try {
    structure.emplace(name, std::move(horizontal), names);
  } catch (const ValidationError& e) {
    ctx.fail(fields_node, e.what());
  }
  StructureFile out{std::move(*structure), {}, std::nullopt, {}, std::nullopt, {}};

  if (const toml::node* c = root.get("completion"))
    out.completion = parse_field_list(ctx, *c, n, names, "completion field");
  if (const toml::node* t = root.get("transversal")) {
    if (n != out.structure.rank() + 1) ctx.fail(t, "transversal is only meaningful for corank 1");
    out.transversal.emplace(parse_components(ctx, *t, n, names, "transversal"));
  }
  if (const toml::node* p = root.get("points")) {
    const toml::array& arr = require_array(ctx, *p, "points");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const toml::array& coords = require_array(ctx, arr[i], "point " + std::to_string(i + 1));
      if (coords.size() != n) ctx.fail(arr[i], "point " + std::to_string(i + 1) + " has wrong dimension");
      Point q(static_cast<Eigen::Index>(n));
      for (std::size_t a = 0; a < n; ++a) {
        q[static_cast<Eigen::Index>(a)] = require_number(ctx, coords[a], "point coordinate");
        if (!std::isfinite(q[static_cast<Eigen::Index>(a)])) ctx.fail(coords[a], "point coordinate must be finite");
      }
      out.points.push_back(std::move(q));
    }
  }
  if (const toml::node* g = root.get("grid")) {
    std::string spec = require_string(ctx, *g, "grid");
    try {
      parse_grid(spec, n);
    } catch (const ValidationError& e) {
      ctx.fail(g, e.what());
    }
    out.grid = spec;
  }
  if (const toml::node* m = root.get("maps")) {
    const toml::array* arr = m->as_array();
    if (!arr || !arr->is_array_of_tables()) ctx.fail(m, "maps must be an array of tables ([[maps]])");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const toml::table& t = *(*arr)[i].as_table();
      const std::string what = "map " + std::to_string(i + 1);
      for (const auto& [key, node] : t) {
        std::string k(key.str());
        if (k != "name" && k != "forward" && k != "inverse") ctx.fail(node, what + ": unknown key '" + k + "'");
      }
      std::string map_name = what;
      if (const toml::node* nm = t.get("name")) map_name = require_string(ctx, *nm, what + " name");
      const toml::node* fwd = t.get("forward");
      const toml::node* inv = t.get("inverse");
      if (!fwd || !inv) ctx.fail(&(*arr)[i], what + " needs both 'forward' and 'inverse'");
      std::vector<Poly> f = parse_components(ctx, *fwd, n, names, what + " forward");
      std::vector<Poly> g = parse_components(ctx, *inv, n, names, what + " inverse");
      try {
        out.maps.push_back(make_poly_map(map_name, std::move(f), std::move(g)));
      } catch (const ValidationError& e) {
        ctx.fail(&(*arr)[i], e.what());
      }
    }
  }
  return out;
}

StructureFile load_structure_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open structure file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure_file(buf.str(), path);
}

std::string serialize_structure_file(const StructureFile& f) {
  const auto& s = f.structure;
  const auto& names = s.variable_names();
  std::ostringstream os;
  os << "name = " << quoted(s.name()) << "\n";
  os << "dimension = " << s.dimension() << "\n";
  os << "variables = [";
  for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << quoted(names[i]);
  os << "]\n";
  os << "fields = " << field_list_text(s.horizontal(), names) << "\n";
  if (!f.completion.empty()) os << "completion = " << field_list_text(f.completion, names) << "\n";
  if (f.transversal) os << "transversal = " << components_text(f.transversal->components(), names) << "\n";
  if (!f.points.empty()) {
    os << "points = [\n";
    for (const auto& q : f.points) {
      os << "  [";
      for (Eigen::Index a = 0; a < q.size(); ++a) os << (a ? ", " : "") << number(q[a]);
      os << "],\n";
    }
    os << "]\n";
  }
  if (f.grid) os << "grid = " << quoted(*f.grid) << "\n";
  for (const auto& m : f.maps) {
    os << "\n[[maps]]\n";
    os << "name = " << quoted(m.name) << "\n";
    os << "forward = " << components_text(m.forward, names) << "\n";
    os << "inverse = " << components_text(m.inverse, names) << "\n";
  }
  return os.str();
}

StructureFile builtin_file(const Builtin& b) {
  StructureFile f{b.structure, {}, b.transversal, {}, std::nullopt, {}};
  if (!b.completions.empty()) f.completion = b.completions.front();
  return f;
}

std::vector<Point> parse_grid(const std::string& spec, std::size_t dimension) {
  struct Axis {
    double start, stop;
    long count;
  };
  std::vector<Axis> axes;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::stringstream ps(part);
    std::string a, b, c;
    if (!std::getline(ps, a, ':') || !std::getline(ps, b, ':') || !std::getline(ps, c, ':') ||
        !ps.eof()) {
      throw ValidationError("grid axis '" + part + "' is not start:stop:count");
    }
    try {
      std::size_t pa = 0, pb = 0, pc = 0;
      Axis ax{std::stod(a, &pa), std::stod(b, &pb), std::stol(c, &pc)};
      if (pa != a.size() || pb != b.size() || pc != c.size()) throw std::invalid_argument(part);
      if (ax.count < 1) throw ValidationError("grid axis '" + part + "' needs count >= 1");
      if (!std::isfinite(ax.start) || !std::isfinite(ax.stop))
        throw ValidationError("grid axis '" + part + "' has non-finite bounds");
      axes.push_back(ax);
    } catch (const std::logic_error&) {
      throw ValidationError("grid axis '" + part + "' is not start:stop:count");
    }
  }
  if (axes.size() != dimension) {
    throw ValidationError("grid has " + std::to_string(axes.size()) + " axes, expected " +
                          std::to_string(dimension));
  }
  std::size_t total = 1;
  for (const auto& ax : axes) {
    total *= static_cast<std::size_t>(ax.count);
    if (total > 10'000'000) throw ValidationError("grid has more than 10^7 points");
  }
  std::vector<Point> out;
  out.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    Point q(static_cast<Eigen::Index>(dimension));
    std::size_t rest = idx;
    for (std::size_t a = dimension; a-- > 0;) {
      const Axis& ax = axes[a];
      auto i = static_cast<long>(rest % static_cast<std::size_t>(ax.count));
      rest /= static_cast<std::size_t>(ax.count);
      q[static_cast<Eigen::Index>(a)] =
          ax.count == 1 ? ax.start : ax.start + (ax.stop - ax.start) * static_cast<double>(i) / static_cast<double>(ax.count - 1);
    }
    out.push_back(std::move(q));
  }
  return out;
}

Point parse_point(const std::string& text, std::size_t dimension) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &pos);
    } catch (const std::logic_error&) {
      throw ValidationError("malformed point coordinate '" + part + "' in '" + text + "'");
    }
    if (pos != part.size() || !std::isfinite(v))
      throw ValidationError("malformed point coordinate '" + part + "' in '" + text + "'");
    coords.push_back(v);
  }
  if (coords.size() != dimension) {
    throw ValidationError("point '" + text + "' has " + std::to_string(coords.size()) +
                          " coordinates, expected " + std::to_string(dimension));
  }
  return Eigen::Map<Point>(coords.data(), static_cast<Eigen::Index>(coords.size()));
}

}  // namespace popp
