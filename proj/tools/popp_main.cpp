// popp: command-line front end for growth vectors, Popp volumes,
// sub-Laplacians and isometry checks of polynomial sub-Riemannian structures.

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "popp/builtins.hpp"
#include "popp/errors.hpp"
#include "popp/flag.hpp"
#include "popp/maps.hpp"
#include "popp/parallel.hpp"
#include "popp/report.hpp"
#include "popp/structure_file.hpp"

using namespace popp;

namespace {

constexpr int kVerifyFailed = 1;

struct Common {
  std::string file;
  std::string builtin_name;
  std::vector<std::string> points;
  std::string grid;
  double tol = 1e-9;
  double fd_step = 1e-4;
  bool json = false;
};

struct Input {
  StructureFile file;
  std::optional<Builtin> builtin;
  std::vector<Point> points;
};

void add_common(CLI::App* cmd, Common& c, bool need_points) {
  cmd->add_option("file", c.file, "structure file (TOML)");
  cmd->add_option("--builtin", c.builtin_name, "builtin structure: heisenberg, martinet, engel, carnot-k3");
  if (need_points) {
    cmd->add_option("-p,--point", c.points, "query point x,y,... (repeatable)")->allow_extra_args(false);
    cmd->add_option("--grid", c.grid, "grid start:stop:count per axis, comma separated");
  }
  cmd->add_flag("--json", c.json, "machine-readable output, one JSON object per line");
}

Input load(const Common& c) {
  if (c.file.empty() == c.builtin_name.empty())
    throw ValidationError("give exactly one of a structure file or --builtin NAME");
  Input in{c.file.empty() ? builtin_file(builtin(c.builtin_name)) : load_structure_file(c.file),
           std::nullopt,
           {}};
  if (!c.builtin_name.empty()) in.builtin = builtin(c.builtin_name);
  const std::size_t n = in.file.structure.dimension();
  for (const auto& p : c.points) in.points.push_back(parse_point(p, n));
  if (!c.grid.empty()) {
    for (auto& q : parse_grid(c.grid, n)) in.points.push_back(std::move(q));
  }
  if (c.points.empty() && c.grid.empty()) {
    in.points = in.file.points;
    if (in.file.grid) {
      for (auto& q : parse_grid(*in.file.grid, n)) in.points.push_back(std::move(q));
    }
  }
  return in;
}

void require_points(const Input& in) {
  if (in.points.empty()) throw ValidationError("no query points: use -p, --grid or the file's points/grid");
}

int run_growth(const Common& c) {
  Input in = load(c);
  require_points(in);
  FlagOptions opts;
  opts.rank_tol = c.tol;
  const SRStructure& s = in.file.structure;
  struct Row {
    GrowthVector g;
    std::string error;
    int code = 0;
  };
  auto rows = parallel_map(in.points.size(), [&](std::size_t i) {
    Row r;
    try {
      r.g = growth_vector(s, in.points[i], opts);
    } catch (const Error& e) {
      r.error = e.what();
      r.code = exit_code_for(e);
    }
    return r;
  });

  int code = 0;
  std::vector<std::pair<GrowthVector, std::size_t>> strata;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    if (r.code) {
      if (!code) code = r.code;
    } else {
      auto it = std::find_if(strata.begin(), strata.end(), [&](const auto& st) { return st.first == r.g; });
      if (it == strata.end()) {
        strata.emplace_back(r.g, 1);
      } else {
        ++it->second;
      }
    }
    if (c.json) {
      nlohmann::json j;
      j["point"] = point_json(in.points[i]);
      if (r.code) {
        j["error"] = r.error;
        j["exit_code"] = r.code;
      } else {
        j["growth_vector"] = r.g;
        j["hausdorff_dimension"] = hausdorff_dimension(r.g);
      }
      std::cout << j.dump() << "\n";
    } else if (r.code) {
      std::cout << format_point(in.points[i]) << "  error: " << r.error << "\n";
    } else {
      std::cout << format_point(in.points[i]) << "  " << format_growth(r.g) << ", Q = " << hausdorff_dimension(r.g)
                << "\n";
    }
  }
  const bool equiregular = code == 0 && strata.size() == 1;
  if (c.json) {
    nlohmann::json j;
    nlohmann::json st = nlohmann::json::array();
    for (const auto& [g, count] : strata) st.push_back({{"growth_vector", g}, {"points", count}});
    j["strata"] = st;
    j["equiregular"] = equiregular;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << strata.size() << (strata.size() == 1 ? " stratum" : " strata") << ":";
    for (const auto& [g, count] : strata) std::cout << " " << format_growth(g) << " x" << count;
    std::cout << "\n" << (equiregular ? "equiregular on the sample" : "not equiregular on the sample") << "\n";
  }
  return code;
}

int run_volume(const Common& c, bool oracle, bool greedy, bool sublap_only) {
  Input in = load(c);
  require_points(in);
  ReportOptions opts;
  opts.flag.rank_tol = c.tol;
  opts.fd_step = c.fd_step;
  opts.oracle = oracle;
  if (!greedy && !in.builtin) opts.completion = in.file.completion;
  std::vector<PointReport> reports = popp_reports(in.file.structure, in.points, opts);
  int code = 0;
  for (const auto& r : reports) {
    if (r.exit_code && !code) code = r.exit_code;
    if (sublap_only) {
      if (c.json) {
        nlohmann::json j{{"point", point_json(r.q)}};
        if (r.error) {
          j["error"] = *r.error;
          j["exit_code"] = r.exit_code;
        } else {
          j["sublaplacian_coefficients"] = r.sublaplacian;
          j["warnings"] = r.warnings;
        }
        std::cout << j.dump() << "\n";
      } else {
        std::cout << format_point(r.q) << "  ";
        if (r.error) {
          std::cout << "error: " << *r.error << "\n";
          continue;
        }
        std::cout << "a = (";
        for (std::size_t i = 0; i < r.sublaplacian.size(); ++i)
          std::cout << (i ? ", " : "") << r.sublaplacian[i];
        std::cout << ")\n";
        for (const auto& w : r.warnings) std::cout << "  warning: " << w << "\n";
      }
    } else if (c.json) {
      std::cout << to_json(r).dump() << "\n";
    } else {
      std::cout << to_text(r);
    }
  }
  if (code && !c.json) {
    for (const auto& r : reports) {
      if (r.error) std::cerr << "error at " << format_point(r.q) << ": " << *r.error << "\n";
    }
  }
  return code;
}

std::vector<Point> random_points(std::size_t n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::vector<Point> out;
  for (std::size_t i = 0; i < count; ++i) {
    Point q(static_cast<Eigen::Index>(n));
    for (auto& v : q) v = coord(rng);
    out.push_back(std::move(q));
  }
  return out;
}

int run_verify(const Common& c, int translations, int samples, std::uint64_t seed) {
  Input in = load(c);
  const SRStructure& s = in.file.structure;
  std::vector<PolyMap> maps = in.file.maps;
  if (in.builtin && in.builtin->carnot) {
    for (const auto& g : random_points(s.dimension(), static_cast<std::size_t>(translations), seed + 1))
      maps.push_back(translation_by(*in.builtin, g));
  }
  // The file's grid is for scans; verification samples should avoid singular loci.
  std::vector<Point> sample = in.points;
  if (c.points.empty() && c.grid.empty()) sample = in.file.points;
  if (sample.empty()) {
    sample = in.builtin ? builtin_sample(*in.builtin, static_cast<std::size_t>(samples), seed)
                        : random_points(s.dimension(), static_cast<std::size_t>(samples), seed);
  }
  const double tol = c.tol;
  if (maps.empty()) {
    if (c.json) {
      std::cout << nlohmann::json{{"passed", true}, {"warnings", {"no maps to verify"}}}.dump() << "\n";
    } else {
      std::cout << "warning: no maps to verify\nPASS\n";
    }
    return 0;
  }
  bool all = true;
  for (const auto& m : maps) {
    IsometryReport iso = is_isometry(m, s, sample, tol);
    VolumeReport vol = check_volume_preserving(m, s, sample, tol);
    bool ok = iso.passed && vol.passed;
    all = all && ok;
    if (c.json) {
      nlohmann::json j{{"map", m.name}, {"isometry", to_json(iso)}, {"volume", to_json(vol)}, {"passed", ok}};
      std::cout << j.dump() << "\n";
      continue;
    }
    std::cout << "map " << m.name << ": " << (ok ? "PASS" : "FAIL") << "\n";
    std::cout << "  (i)  distribution preserved: " << (iso.preserves_distribution ? "yes" : "no")
              << "  max residual " << iso.max_span_residual << "\n";
    std::cout << "  (ii) metric preserved:       " << (iso.preserves_metric ? "yes" : "no")
              << "  max |Gram - I| " << iso.max_gram_error << "\n";
    if (!iso.preserves_metric) {
      for (const auto& p : iso.points) {
        if (p.error) continue;
        Eigen::IOFormat f(6, 0, ", ", "; ", "", "", "[", "]");
        std::cout << "       Gram at " << format_point(p.q) << " = " << p.gram.format(f) << "\n";
        break;
      }
    }
    std::cout << "  volume preserved:            " << (vol.passed ? "yes" : "no") << "  max rel error "
              << vol.max_relative_error << ", factor " << vol.first_ratio << "\n";
    for (const auto& p : iso.points) {
      if (p.error) std::cout << "  error at " << format_point(p.q) << ": " << *p.error << "\n";
    }
    for (const auto& p : vol.points) {
      if (p.error) std::cout << "  volume error at " << format_point(p.q) << ": " << *p.error << "\n";
    }
  }
  if (!c.json) std::cout << (all ? "PASS" : "FAIL") << "\n";
  return all ? 0 : kVerifyFailed;
}

int run_dump(const Common& c) {
  Input in = load(c);
  std::cout << serialize_structure_file(in.file);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Popp volume and sub-Laplacian toolkit for polynomial sub-Riemannian structures"};
  app.require_subcommand(1);

  Common growth_opts, volume_opts, sublap_opts, verify_opts, dump_opts;
  bool oracle = false;
  bool greedy = false;
  bool sublap_greedy = false;
  int translations = 3;
  int samples = 20;
  std::uint64_t seed = 1;

  auto* growth = app.add_subcommand("growth", "growth vector and equiregularity over points");
  add_common(growth, growth_opts, true);
  growth->add_option("--tol", growth_opts.tol, "relative rank tolerance")->capture_default_str();

  auto* volume = app.add_subcommand("volume", "Popp volume report per point");
  add_common(volume, volume_opts, true);
  volume->add_option("--tol", volume_opts.tol, "relative rank tolerance")->capture_default_str();
  volume->add_option("--fd-step", volume_opts.fd_step, "finite-difference step")->capture_default_str();
  volume->add_flag("--oracle", oracle, "cross-check B_j^-1 with the quotient-norm oracle");
  volume->add_flag("--greedy", greedy, "ignore the file's completion, use bracket words");

  auto* sublap = app.add_subcommand("sublap", "sub-Laplacian first-order coefficients per point");
  add_common(sublap, sublap_opts, true);
  sublap->add_option("--tol", sublap_opts.tol, "relative rank tolerance")->capture_default_str();
  sublap->add_option("--fd-step", sublap_opts.fd_step, "finite-difference step")->capture_default_str();
  sublap->add_flag("--greedy", sublap_greedy, "ignore the file's completion, use bracket words");

  auto* verify = app.add_subcommand("verify", "check that the file's maps are volume-preserving isometries");
  verify_opts.tol = 1e-8;
  add_common(verify, verify_opts, true);
  verify->add_option("--tol", verify_opts.tol, "pass tolerance")->capture_default_str();
  verify->add_option("--translations", translations, "random left translations for builtin groups")
      ->capture_default_str();
  verify->add_option("--samples", samples, "sample points when none are given")->capture_default_str();
  verify->add_option("--seed", seed, "seed for random translations and samples")->capture_default_str();

  auto* dump = app.add_subcommand("dump", "print the structure in canonical file form");
  add_common(dump, dump_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*growth) return run_growth(growth_opts);
    if (*volume) return run_volume(volume_opts, oracle, greedy, false);
    if (*sublap) return run_volume(sublap_opts, false, sublap_greedy, true);
    if (*verify) return run_verify(verify_opts, translations, samples, seed);
    if (*dump) return run_dump(dump_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return 0;
}
