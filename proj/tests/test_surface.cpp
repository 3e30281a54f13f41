#include "qteich/pathsearch.hpp"
#include "qteich/surface.hpp"
#include "qteich/surface_io.hpp"

#include <doctest.h>

#include <stdexcept>

#include <random>
#include <set>

using namespace qteich;

TEST_CASE("builtin surfaces validate") {
  struct Expect {
    const char* name;
    int g, p, m;
  };
  for (const Expect& e : {Expect{"once-punctured-torus", 1, 1, 1},
                          Expect{"thrice-punctured-sphere", 0, 3, 1},
                          Expect{"four-punctured-sphere", 0, 4, 2},
                          Expect{"twice-punctured-torus", 1, 2, 2}}) {
    const auto& tau = builtin_surface(e.name);
    CHECK(tau.base().genus() == e.g);
    CHECK(tau.base().punctures() == e.p);
    CHECK(tau.base().m() == e.m);
    CHECK(tau.base().num_triangles() == 2 * e.m);
    CHECK(tau.base().num_edges() == 3 * e.m);
  }
  CHECK(builtin_surfaces().size() == 4);
}

TEST_CASE("invalid gluings are rejected") {
  // a side glued to itself
  std::vector<std::array<TriSide, 3>> t(2);
  t[0] = {TriSide{0, {0, 0}}, TriSide{1, {1, 1}}, TriSide{2, {1, 2}}};
  t[1] = {TriSide{0, {1, 0}}, TriSide{1, {0, 1}}, TriSide{2, {0, 2}}};
  CHECK_THROWS_AS(IdealTriangulation::build(1, 1, t), std::invalid_argument);

  // non-involutive gluing
  std::vector<std::array<TriSide, 3>> u(2);
  u[0] = {TriSide{1, {1, 1}}, TriSide{2, {1, 2}}, TriSide{0, {1, 0}}};
  u[1] = {TriSide{0, {0, 2}}, TriSide{1, {0, 1}}, TriSide{2, {0, 1}}};
  CHECK_THROWS_AS(IdealTriangulation::build(1, 1, u), std::invalid_argument);

  // m <= 0: a once-punctured sphere cannot be triangulated this way
  CHECK_THROWS_AS(IdealTriangulation::build(0, 1, t), std::invalid_argument);

  // two disjoint once-punctured tori have consistent counts but no connectivity
  std::vector<std::array<TriSide, 3>> d(4);
  d[0] = {TriSide{1, {1, 1}}, TriSide{2, {1, 2}}, TriSide{0, {1, 0}}};
  d[1] = {TriSide{0, {0, 2}}, TriSide{1, {0, 0}}, TriSide{2, {0, 1}}};
  d[2] = {TriSide{4, {3, 1}}, TriSide{5, {3, 2}}, TriSide{3, {3, 0}}};
  d[3] = {TriSide{3, {2, 2}}, TriSide{4, {2, 0}}, TriSide{5, {2, 1}}};
  CHECK_THROWS_AS(IdealTriangulation::build(1, 2, d), std::invalid_argument);
}

TEST_CASE("corner counts of the once-punctured torus") {
  const auto& lam = builtin_surface("once-punctured-torus").base();
  auto a = lam.corner_counts();
  // frozen by enumerating the six spikes of the standard square picture
  std::vector<std::vector<int>> expected{{0, 0, 2}, {2, 0, 0}, {0, 2, 0}};
  CHECK(a == expected);
  auto sigma = lam.skew_form();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(sigma[i][j] == -sigma[j][i]);
      if (i != j) CHECK(std::abs(sigma[i][j]) == 2);
    }
}

TEST_CASE("corner counts sum to 6m and entries stay within bounds") {
  for (const auto& b : builtin_surfaces()) {
    const auto& lam = b.tau.base();
    auto a = lam.corner_counts();
    int total = 0;
    for (const auto& row : a)
      for (int v : row) total += v;
    CHECK(total == 6 * lam.m());
    auto sigma = lam.skew_form();
    for (const auto& row : sigma)
      for (int v : row) CHECK(std::abs(v) <= 2);
  }
}

TEST_CASE("thrice-punctured sphere edge algebra is commutative") {
  const auto& lam = builtin_surface("thrice-punctured-sphere").base();
  for (const auto& row : lam.skew_form())
    for (int v : row) CHECK(v == 0);
}

TEST_CASE("reindexing conjugates the corner counts") {
  const auto& lam = builtin_surface("four-punctured-sphere").base();
  Perm alpha{2, 0, 1, 5, 4, 3};
  auto moved = lam.reindex_edges(alpha);
  auto a = lam.corner_counts(), b = moved.corner_counts();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(b[alpha[i]][alpha[j]] == a[i][j]);
}

TEST_CASE("flip classification") {
  const auto& sphere4 = builtin_surface("four-punctured-sphere").base();
  for (int e = 0; e < sphere4.num_edges(); ++e)
    CHECK(sphere4.classify_flip(e).case_id == 1);

  const auto& torus1 = builtin_surface("once-punctured-torus").base();
  for (int e = 0; e < torus1.num_edges(); ++e)
    CHECK(torus1.classify_flip(e).case_id == 8);

  const auto& sphere3 = builtin_surface("thrice-punctured-sphere").base();
  std::set<int> seen;
  for (int e = 0; e < sphere3.num_edges(); ++e)
    seen.insert(sphere3.classify_flip(e).case_id);
  for (int c : seen) CHECK((c == 6 || c == 7));
}

TEST_CASE("flips are involutive and preserve validity") {
  for (const auto& b : builtin_surfaces()) {
    const auto& lam = b.tau.base();
    for (int e = 0; e < lam.num_edges(); ++e) {
      if (!lam.flippable(e)) continue;
      IdealTriangulation f = lam.flip(e);
      CHECK(f.flip(e) == lam);
    }
  }
}

TEST_CASE("flipping the pillowcase produces self-folded edges") {
  const auto& lam = builtin_surface("thrice-punctured-sphere").base();
  IdealTriangulation f = lam.flip(0);
  int self_folded = 0;
  for (int e = 0; e < f.num_edges(); ++e)
    if (f.is_self_folded(e)) ++self_folded;
  CHECK(self_folded == 2);
  CHECK_THROWS_AS(f.flip(1), std::invalid_argument);
  CHECK_THROWS_AS(f.classify_flip(1), std::invalid_argument);
}

TEST_CASE("decorated moves") {
  const auto& tau = builtin_surface("once-punctured-torus");
  for (int t = 0; t < tau.num_triangles(); ++t)
    CHECK(tau.mark_rotation(t).mark_rotation(t).mark_rotation(t) == tau);

  CHECK(tau.exchange_applicable(0, 1));
  CHECK(tau.exchange_edge(0, 1) == 0);
  DecoratedTriangulation once = tau.exchange(0, 1);
  DecoratedTriangulation twice = once.exchange(0, 1);
  CHECK(twice == tau.reindex_triangles(transposition(2, 0, 1)));
  // the exchange is symmetric in its two arguments
  CHECK(tau.exchange(1, 0) == once);
}

TEST_CASE("triangle numbering is quotiented for ideal equality only") {
  const auto& tau = builtin_surface("four-punctured-sphere");
  Perm rot{1, 2, 3, 0};
  DecoratedTriangulation moved = tau.reindex_triangles(rot);
  CHECK(moved.base() == tau.base());   // ideal: triangle order immaterial
  CHECK_FALSE(moved == tau);           // decorated: triangle labels matter
  auto back = moved.relabeling_onto(tau);
  REQUIRE(back.has_value());
  CHECK(moved.reindex_triangles(*back) == tau);
}

TEST_CASE("edge labels are part of ideal equality") {
  const auto& lam = builtin_surface("four-punctured-sphere").base();
  Perm alpha{1, 0, 2, 3, 4, 5};
  CHECK_FALSE(lam.reindex_edges(alpha) == lam);
  auto rel = lam.relabeling_onto(lam.reindex_edges(alpha));
  REQUIRE(rel.has_value());
  CHECK(lam.reindex_edges(*rel) == lam.reindex_edges(alpha));
}

TEST_CASE("pentagon spots") {
  CHECK(builtin_surface("once-punctured-torus").base().pentagon_spots().empty());
  CHECK(builtin_surface("thrice-punctured-sphere").base().pentagon_spots().empty());
  CHECK_FALSE(builtin_surface("four-punctured-sphere").base().pentagon_spots().empty());
  CHECK_FALSE(builtin_surface("twice-punctured-torus").base().pentagon_spots().empty());
}

TEST_CASE("every bundled decorated surface admits an exchange") {
  for (const auto& b : builtin_surfaces()) {
    bool any = false;
    for (int i = 0; i < b.tau.num_triangles(); ++i)
      for (int j = i + 1; j < b.tau.num_triangles(); ++j)
        if (b.tau.exchange_applicable(i, j)) any = true;
    CHECK(any);
  }
}

TEST_CASE("perturbed gluing tables are rejected") {
  // every single-field corruption of a valid table must fail validation
  const auto& lam = builtin_surface("four-punctured-sphere").base();
  std::vector<std::array<TriSide, 3>> table(lam.num_triangles());
  for (int t = 0; t < lam.num_triangles(); ++t)
    for (int s = 0; s < 3; ++s) table[t][s] = TriSide{lam.edge_at({t, s}), lam.partner({t, s})};

  int rejected = 0, total = 0;
  for (int t = 0; t < lam.num_triangles(); ++t)
    for (int s = 0; s < 3; ++s) {
      auto corrupt_and_check = [&](std::array<TriSide, 3>* row, auto mutate) {
        auto saved = *row;
        mutate();
        ++total;
        try {
          IdealTriangulation::build(lam.genus(), lam.punctures(), table);
        } catch (const std::invalid_argument&) {
          ++rejected;
        }
        *row = saved;
      };
      corrupt_and_check(&table[t], [&] { table[t][s].edge = (table[t][s].edge + 1) % 6; });
      corrupt_and_check(&table[t], [&] {
        table[t][s].partner.side = (table[t][s].partner.side + 1) % 3;
      });
      corrupt_and_check(&table[t], [&] { table[t][s].partner = {t, s}; });
    }
  CHECK(rejected == total);
}

TEST_CASE("move path search") {
  const auto& lam = builtin_surface("four-punctured-sphere").base();
  // trivial path
  auto res = find_move_path(lam, lam, 4);
  REQUIRE(res.found);
  CHECK(res.moves.empty());
  // single flip
  IdealTriangulation f = lam.flip(2);
  res = find_move_path(lam, f, 4);
  REQUIRE(res.found);
  CHECK(res.moves.size() == 1);
  CHECK(apply_moves(lam, res.moves) == f);
  // flip plus relabeling
  Perm alpha{3, 1, 2, 0, 5, 4};
  IdealTriangulation g = f.reindex_edges(alpha);
  res = find_move_path(lam, g, 4);
  REQUIRE(res.found);
  CHECK(res.moves.size() == 2);
  CHECK(apply_moves(lam, res.moves) == g);
  // bound exceeded is reported, not silent
  auto hopeless = find_move_path(lam, f, 0);
  CHECK_FALSE(hopeless.found);
  CHECK(hopeless.bound_exceeded);
}

TEST_CASE("decorated path search") {
  const auto& tau = builtin_surface("once-punctured-torus");
  DecoratedTriangulation target =
      tau.exchange(0, 1).mark_rotation(0).reindex_triangles(transposition(2, 0, 1));
  auto res = find_move_path(tau, target, 6);
  REQUIRE(res.found);
  CHECK(apply_moves(tau, res.moves) == target);
}

TEST_CASE("path search on the largest bundled surface") {
  const auto& lam = builtin_surface("twice-punctured-torus").base();
  std::mt19937_64 rng(13);
  IdealTriangulation target = lam;
  for (int step = 0; step < 3; ++step) {
    std::vector<int> flippable;
    for (int e = 0; e < target.num_edges(); ++e)
      if (target.flippable(e)) flippable.push_back(e);
    target = target.flip(flippable[rng() % flippable.size()]);
  }
  auto res = find_move_path(lam, target, 6, 100000);
  REQUIRE(res.found);
  CHECK(res.moves.size() <= 4);
  CHECK(apply_moves(lam, res.moves) == target);
}

TEST_CASE("path families contain genuine alternatives") {
  const auto& lam = builtin_surface("once-punctured-torus").base();
  auto fams = ideal_path_families(lam, 2, 2, 10);
  bool found_flip_flip = false;
  for (const auto& fam : fams)
    if (fam.endpoint == lam)
      for (const auto& p : fam.paths)
        if (p.size() == 2) found_flip_flip = true;
  CHECK(found_flip_flip);
}

TEST_CASE("surface file round trip") {
  for (const auto& b : builtin_surfaces()) {
    std::string text = serialize_surface(b.tau);
    ParsedSurface back = parse_surface(text);
    CHECK(back.decorated);
    CHECK(back.as_decorated() == b.tau);
    CHECK(back.lam == b.tau.base());
  }
  CHECK_THROWS(parse_surface("qtsurf v2\n"));
  CHECK_THROWS(parse_surface("genus 1\n"));
}

TEST_CASE("moves print stable text") {
  CHECK(Move::flip(2).str() == "flip 3");
  CHECK(Move::mark_rotation(0).str() == "rho 1");
  CHECK(Move::exchange(0, 3).str() == "exchange 1 4");
  CHECK(Move::reindex_edges({1, 0, 2}).str() == "reindex-edges 2 1 3");
}
