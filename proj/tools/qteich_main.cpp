#include "qteich/pathsearch.hpp"
#include "qteich/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace qteich;

LaurentPoly parse_q_monomial(const std::string& text) {
  // accepted forms: "1", "-1", "q", "q^3", "q^-2"
  if (text == "q") return LaurentPoly::q_power(1);
  if (text.rfind("q^", 0) == 0) return LaurentPoly::q_power(std::stoi(text.substr(2)));
  size_t pos = 0;
  long long c = std::stoll(text, &pos);
  if (pos != text.size()) throw CLI::ValidationError("expected an integer or q^<k>: " + text);
  return LaurentPoly(c);
}

DecoratedTriangulation resolve_surface(const std::string& spec) {
  for (const auto& b : builtin_surfaces())
    if (b.name == spec) return b.tau;
  return load_surface_file(spec).as_decorated();
}

int cmd_verify(const std::string& surface_spec, std::vector<std::string> suites,
               const std::string& a_str, const std::string& b_str,
               const std::vector<int>& levels, int q1_points, double tol,
               unsigned long long seed, int depth, const std::string& out_path,
               bool no_timing) {
  SuiteConfig cfg;
  cfg.policy.q1_points = q1_points;
  cfg.policy.tolerance = tol;
  cfg.policy.seed = seed;
  cfg.policy.rou_levels = levels;
  cfg.bfs_depth = depth;
  for (int N : levels) {
    bool prime = N >= 2;
    for (int d = 2; d * d <= N; ++d)
      if (N % d == 0) prime = false;
    if (N < 3 || N % 2 == 0 || !prime) {
      std::cerr << "error: root-of-unity levels must be odd primes >= 3\n";
      return 2;
    }
  }
  if (!a_str.empty() || !b_str.empty()) {
    LaurentPoly a = a_str.empty() ? LaurentPoly::q_power(-2) : parse_q_monomial(a_str);
    LaurentPoly b = b_str.empty() ? LaurentPoly::q_power(3) : parse_q_monomial(b_str);
    cfg.ab_override = std::make_pair(a, b);
  }

  DecoratedTriangulation tau = resolve_surface(surface_spec);
  std::string surface_label = surface_spec;
  if (auto slash = surface_label.find_last_of('/'); slash != std::string::npos)
    surface_label = surface_label.substr(slash + 1);
  if (suites.empty()) {
    // an empty selection is a valid (vacuously passing) run
    Report rep;
    rep.config_lines.push_back("surface=" + surface_spec + " suites=<none>");
    std::cout << rep.render(!no_timing);
    return 0;
  }
  std::vector<std::string> expanded = expand_suites(suites);
  for (const auto& s : expanded)
    if (!is_suite_name(s)) {
      std::cerr << "error: unknown suite '" << s << "'\n";
      return 2;
    }

  Report rep;
  {
    std::ostringstream os;
    os << "surface=" << surface_spec << " seed=" << seed << " q1-points=" << q1_points
       << " tol=" << tol << " depth=" << depth << " N=";
    for (size_t i = 0; i < levels.size(); ++i) os << (i ? "," : "") << levels[i];
    if (cfg.ab_override)
      os << " a=" << cfg.ab_override->first.str() << " b=" << cfg.ab_override->second.str();
    rep.config_lines.push_back(os.str());
  }
  for (const auto& s : expanded) run_suite(s, surface_label, tau, cfg, rep);

  std::string text = rep.render(!no_timing);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 2;
    }
    f << text;
  }
  std::cout << text;
  return rep.all_pass() ? 0 : 1;
}

int cmd_surfaces_list() {
  for (const auto& b : builtin_surfaces()) {
    const auto& lam = b.tau.base();
    std::cout << b.name << "  genus=" << lam.genus() << " punctures=" << lam.punctures()
              << " triangles=" << lam.num_triangles() << " edges=" << lam.num_edges()
              << "\n";
  }
  return 0;
}

int cmd_surfaces_show(const std::string& name) {
  std::cout << serialize_surface(builtin_surface(name));
  return 0;
}

int cmd_path(const std::string& from_path, const std::string& to_path, int depth,
             bool ideal_only) {
  ParsedSurface a = load_surface_file(from_path);
  ParsedSurface b = load_surface_file(to_path);
  PathSearchResult res;
  if (!ideal_only && a.decorated && b.decorated)
    res = find_move_path(a.as_decorated(), b.as_decorated(), depth);
  else
    res = find_move_path(a.lam, b.lam, depth);
  if (!res.found) {
    std::cerr << (res.bound_exceeded ? "search bound exceeded" : "no path found")
              << " (explored " << res.explored << " triangulations, depth " << depth
              << ")\n";
    return 1;
  }
  std::cout << "# " << res.moves.size() << " moves, explored " << res.explored
            << " triangulations\n";
  for (const Move& mv : res.moves) std::cout << mv.str() << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification of triangulation coordinate-change algebras"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run check suites against a surface");
  std::string surface, a_str, b_str, out_path;
  std::vector<std::string> suites;
  std::vector<int> levels{3, 5};
  int q1_points = 8, depth = 12;
  double tol = 1e-9;
  unsigned long long seed = 0;
  bool no_timing = false;
  verify->add_option("--surface", surface, "builtin name or qtsurf file")->required();
  verify->add_option("--suite", suites, "suite names (repeatable; 'all')");
  verify->add_option("--a", a_str, "override the rotation scalar, e.g. q^-2 or 1");
  verify->add_option("--b", b_str, "override the exchange scalar, e.g. q^3");
  verify->add_option("--N", levels, "root-of-unity levels (odd)")->delimiter(',');
  verify->add_option("--q1-points", q1_points, "random q=1 evaluation points");
  verify->add_option("--tol", tol, "relative tolerance for numeric layers");
  verify->add_option("--seed", seed, "random seed recorded in reports");
  verify->add_option("--depth", depth, "move path search depth bound");
  verify->add_option("--out", out_path, "also write the report to this file");
  verify->add_flag("--no-timing", no_timing, "omit time_ms fields (byte-stable output)");

  // surfaces
  auto* surfaces = app.add_subcommand("surfaces", "bundled surface catalog");
  auto* list = surfaces->add_subcommand("list", "list bundled surfaces");
  auto* show = surfaces->add_subcommand("show", "print a bundled surface file");
  std::string show_name;
  show->add_option("name", show_name, "builtin surface name")->required();
  surfaces->require_subcommand(1);

  // path
  auto* path = app.add_subcommand("path", "search a move path between two surfaces");
  std::string from_path, to_path;
  int path_depth = 12;
  bool ideal_only = false;
  path->add_option("--from", from_path, "source qtsurf file")->required();
  path->add_option("--to", to_path, "target qtsurf file")->required();
  path->add_option("--depth", path_depth, "search depth bound");
  path->add_flag("--ideal", ideal_only, "ignore marks and search flip moves only");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed())
      return cmd_verify(surface, suites, a_str, b_str, levels, q1_points, tol, seed, depth,
                        out_path, no_timing);
    if (list->parsed()) return cmd_surfaces_list();
    if (show->parsed()) return cmd_surfaces_show(show_name);
    if (path->parsed()) return cmd_path(from_path, to_path, path_depth, ideal_only);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
