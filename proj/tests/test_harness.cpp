#include "qteich/suites.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace qteich;

TEST_CASE("suite catalog") {
  CHECK(is_suite_name("exact-sequence"));
  CHECK(is_suite_name("compat"));
  CHECK_FALSE(is_suite_name("nope"));
  auto expanded = expand_suites({"classical-all"});
  CHECK(expanded.size() == 4);
  auto all = expand_suites({"all"});
  CHECK(all.size() >= 12);
  // composite selectors do not duplicate
  auto twice = expand_suites({"all", "exact-sequence"});
  CHECK(twice.size() == all.size());
}

TEST_CASE("reports are deterministic for a fixed seed") {
  SuiteConfig cfg;
  const auto& tau = builtin_surface("thrice-punctured-sphere");
  Report r1, r2;
  run_suite("exact-sequence", "thrice-punctured-sphere", tau, cfg, r1);
  run_suite("flip-involution", "thrice-punctured-sphere", tau, cfg, r1);
  run_suite("exact-sequence", "thrice-punctured-sphere", tau, cfg, r2);
  run_suite("flip-involution", "thrice-punctured-sphere", tau, cfg, r2);
  CHECK(r1.render(false) == r2.render(false));
  CHECK(r1.all_pass());
}

TEST_CASE("report text is line structured and sorted") {
  Report rep;
  rep.add({"b/check/x", "second", true, "", 1.0});
  rep.add({"a/check/x", "first", false, "why", 2.0});
  std::string text = rep.render(false);
  CHECK(text.find("qtreport v1\n") == 0);
  CHECK(text.find("a/check/x") < text.find("b/check/x"));
  CHECK(text.find("verdict=fail detail={why}") != std::string::npos);
  CHECK(text.find("summary total=2 pass=1 fail=1") != std::string::npos);
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("cheap suites pass on the smallest surface") {
  SuiteConfig cfg;
  cfg.flip_points = 20;
  cfg.classical_points = 10;
  const auto& tau = builtin_surface("once-punctured-torus");
  Report rep;
  for (const char* s : {"surface-relations", "flip-involution", "exact-sequence", "poisson",
                        "qtorus-normal-form", "matrix-oracle"})
    run_suite(s, "once-punctured-torus", tau, cfg, rep);
  INFO(rep.render(false));
  CHECK(rep.all_pass());
}

TEST_CASE("unknown suites are rejected") {
  SuiteConfig cfg;
  Report rep;
  CHECK_THROWS_AS(
      run_suite("bogus", "once-punctured-torus", builtin_surface("once-punctured-torus"),
                cfg, rep),
      std::invalid_argument);
}
