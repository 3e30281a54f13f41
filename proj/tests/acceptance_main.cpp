// Acceptance suite: one line per criterion, nonzero exit iff any fails.
// Runs the full default-policy checks over every bundled surface.

#include "qteich/suites.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <vector>

using namespace qteich;

namespace {

struct Criterion {
  int number;
  std::string title;
  std::function<bool(std::string& detail)> run;
};

Report run_over_surfaces(const std::vector<std::string>& suites, const SuiteConfig& cfg) {
  Report rep;
  for (const auto& b : builtin_surfaces())
    for (const auto& s : suites) run_suite(s, b.name, b.tau, cfg, rep);
  return rep;
}

bool all_pass_with(const Report& rep, std::string& detail,
                   const std::vector<std::string>& required_ids = {}) {
  for (const auto& id : required_ids) {
    bool present = false;
    for (const auto& c : rep.checks)
      if (c.id == id) present = true;
    if (!present) {
      detail = "missing required check " + id;
      return false;
    }
  }
  if (!rep.all_pass()) {
    for (const auto& c : rep.checks)
      if (!c.pass) {
        detail = c.id + ": " + c.detail;
        return false;
      }
  }
  return true;
}

} // namespace

int main() {
  SuiteConfig cfg; // defaults: seed 0, 8 q=1 points, N in {3,5}, tol 1e-9, depth 12
  std::vector<Criterion> criteria;

  criteria.push_back({1, "combinatorial move relations incl. both pentagons", [&](std::string& d) {
    Report rep = run_over_surfaces({"surface-relations"}, cfg);
    return all_pass_with(rep, d,
        {"surface-relations/pentagon-ideal/four-punctured-sphere",
         "surface-relations/pentagon-ideal/twice-punctured-torus",
         "surface-relations/pentagon-decorated/four-punctured-sphere",
         "surface-relations/pentagon-decorated/twice-punctured-torus"});
  }});
  criteria.push_back({2, "classical flip involution at 1e-12", [&](std::string& d) {
    Report rep = run_over_surfaces({"flip-involution"}, cfg);
    return all_pass_with(rep, d);
  }});
  criteria.push_back({3, "exact sequence by exact integer ranks", [&](std::string& d) {
    Report rep = run_over_surfaces({"exact-sequence"}, cfg);
    return all_pass_with(rep, d);
  }});
  criteria.push_back({4, "Poisson bivector pushforward, exact integer identity", [&](std::string& d) {
    Report rep = run_over_surfaces({"poisson"}, cfg);
    return all_pass_with(rep, d);
  }});
  criteria.push_back({5, "classical compatibility squares at 1e-10", [&](std::string& d) {
    Report rep = run_over_surfaces({"compat-classical"}, cfg);
    return all_pass_with(rep, d);
  }});
  criteria.push_back({6, "normal form vs transposition-counting oracle", [&](std::string& d) {
    Report rep = run_over_surfaces({"qtorus-normal-form"}, cfg);
    return all_pass_with(rep, d);
  }});
  criteria.push_back({7, "matrix oracle relation residuals below 1e-12", [&](std::string& d) {
    Report rep = run_over_surfaces({"matrix-oracle"}, cfg);
    return all_pass_with(rep, d);
  }});
  criteria.push_back({8, "quantum relation suites incl. both quantum pentagons", [&](std::string& d) {
    Report rep = run_over_surfaces({"cf-relations", "kashaev-relations"}, cfg);
    return all_pass_with(rep, d,
        {"cf-relations/pentagon-quantum/four-punctured-sphere",
         "cf-relations/pentagon-quantum/twice-punctured-torus",
         "kashaev-relations/pentagon-omega/four-punctured-sphere"});
  }});
  criteria.push_back({9, "path independence of composed coordinate changes", [&](std::string& d) {
    Report rep = run_over_surfaces({"path-independence"}, cfg);
    return all_pass_with(rep, d);
  }});
  criteria.push_back({10, "compatibility iff a=q^-2, b=q^3", [&](std::string& d) {
    Report rep = run_over_surfaces({"compat"}, cfg);
    return all_pass_with(rep, d,
        {"compat/reject-a=1-b=q^3/once-punctured-torus",
         "compat/reject-a=q^-2-b=q/once-punctured-torus",
         "compat/reject-a=1-b=1/once-punctured-torus"});
  }});
  criteria.push_back({11, "linking homomorphism and the central element", [&](std::string& d) {
    Report rep = run_over_surfaces({"central-element"}, cfg);
    return all_pass_with(rep, d);
  }});
  criteria.push_back({12, "q=1 specialization of every quantum map", [&](std::string& d) {
    Report rep = run_over_surfaces({"q1-specialization"}, cfg);
    return all_pass_with(rep, d);
  }});

  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& ex) {
      detail = std::string("exception: ") + ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << c.number << ": " << (ok ? "PASS" : "FAIL") << "  "
              << c.title << "  (" << secs << "s)";
    if (!ok) std::cout << "  [" << detail << "]";
    std::cout << "\n" << std::flush;
    if (!ok) ++failures;
  }
  std::cout << (failures == 0 ? "acceptance: all criteria passed"
                              : "acceptance: FAILURES present")
            << "\n";
  return failures;
}
