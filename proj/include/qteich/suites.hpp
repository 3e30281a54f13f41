#pragma once

#include "qteich/quantum_maps.hpp"
#include "qteich/report.hpp"
#include "qteich/surface_io.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qteich {

struct SuiteConfig {
  EqualityPolicy policy;        // seed, q=1 points, root-of-unity levels, tolerance
  int bfs_depth = 12;           // path search bound
  int flip_points = 100;        // random vectors per flip-involution instance
  int classical_points = 50;    // random vectors per classical diagram
  double flip_tol = 1e-12;      // double-flip restoration, relative
  double classical_tol = 1e-10; // classical diagram commutativity, relative
  double rep_tol = 1e-12;       // generator relation residual, operator norm

  /// Parameter pairs that the compatibility square must reject.
  std::vector<std::pair<LaurentPoly, LaurentPoly>> failing_params = {
      {LaurentPoly(1), LaurentPoly::q_power(3)},
      {LaurentPoly::q_power(-2), LaurentPoly::q_power(1)},
      {LaurentPoly(1), LaurentPoly(1)},
  };
  /// CLI override: run the compat suite at exactly this (a, b).
  std::optional<std::pair<LaurentPoly, LaurentPoly>> ab_override;
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);
/// Expands the composite selectors "all" and "classical-all".
std::vector<std::string> expand_suites(const std::vector<std::string>& names);

/// Runs one suite against one (decorated) surface, appending check records.
void run_suite(const std::string& suite, const std::string& surface_name,
               const DecoratedTriangulation& tau, const SuiteConfig& cfg, Report& rep);

} // namespace qteich
