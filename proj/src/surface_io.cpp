#include "qteich/surface_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qteich {

namespace {

std::string serialize_table(const IdealTriangulation& lam, const std::vector<int>* marks) {
  std::ostringstream os;
  os << "qtsurf v1\n";
  os << "genus " << lam.genus() << "\n";
  os << "punctures " << lam.punctures() << "\n";
  os << "triangles " << lam.num_triangles() << "\n";
  for (int t = 0; t < lam.num_triangles(); ++t) {
    os << "tri " << t + 1 << " mark ";
    if (marks)
      os << (*marks)[t];
    else
      os << "-";
    os << " :";
    for (int s = 0; s < 3; ++s) {
      SideRef p = lam.partner({t, s});
      os << "  " << lam.edge_at({t, s}) + 1 << " " << p.tri + 1 << " " << p.side;
    }
    os << "\n";
  }
  return os.str();
}

} // namespace

std::string serialize_surface(const DecoratedTriangulation& tau) {
  std::vector<int> marks(tau.num_triangles());
  for (int t = 0; t < tau.num_triangles(); ++t) marks[t] = tau.mark(t);
  return serialize_table(tau.base(), &marks);
}

std::string serialize_surface(const IdealTriangulation& lam) {
  return serialize_table(lam, nullptr);
}

ParsedSurface parse_surface(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int genus = -1, punctures = -1, triangles = -1;
  std::vector<std::array<TriSide, 3>> table;
  std::vector<int> marks;
  bool any_mark = false, header_seen = false;
  int tri_lines = 0;

  auto fail = [](const std::string& why) { throw std::runtime_error("qtsurf parse: " + why); };

  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "qtsurf") {
      std::string ver;
      ls >> ver;
      if (ver != "v1") fail("unsupported version '" + ver + "'");
      header_seen = true;
    } else if (key == "genus") {
      ls >> genus;
    } else if (key == "punctures") {
      ls >> punctures;
    } else if (key == "triangles") {
      ls >> triangles;
      if (triangles <= 0) fail("bad triangle count");
      table.assign(triangles, {});
      marks.assign(triangles, 0);
    } else if (key == "tri") {
      if (triangles <= 0) fail("'tri' before 'triangles'");
      int idx;
      std::string kw, marktok, colon;
      if (!(ls >> idx >> kw >> marktok >> colon) || kw != "mark" || colon != ":")
        fail("malformed 'tri' line");
      if (idx < 1 || idx > triangles) fail("triangle index out of range");
      if (marktok != "-") {
        int mk = std::stoi(marktok);
        if (mk < 0 || mk > 2) fail("mark must be 0..2 or '-'");
        marks[idx - 1] = mk;
        any_mark = true;
      }
      for (int s = 0; s < 3; ++s) {
        int e, pt, ps;
        if (!(ls >> e >> pt >> ps)) fail("expected three side records");
        table[idx - 1][s] = TriSide{e - 1, SideRef{pt - 1, ps}};
      }
      ++tri_lines;
    } else {
      fail("unknown record '" + key + "'");
    }
  }
  if (!header_seen) fail("missing 'qtsurf v1' header");
  if (genus < 0 || punctures < 1) fail("missing genus/punctures header");
  if (tri_lines != triangles) fail("triangle line count mismatch");

  ParsedSurface out{IdealTriangulation::build(genus, punctures, std::move(table)),
                    any_mark, std::move(marks)};
  return out;
}

ParsedSurface load_surface_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open surface file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_surface(buf.str());
}

namespace {

DecoratedTriangulation make_once_punctured_torus() {
  // Square with both pairs of opposite sides identified and one diagonal;
  // every edge is shared by the two triangles.
  std::vector<std::array<TriSide, 3>> t(2);
  t[0] = {TriSide{1, {1, 1}}, TriSide{2, {1, 2}}, TriSide{0, {1, 0}}};
  t[1] = {TriSide{0, {0, 2}}, TriSide{1, {0, 0}}, TriSide{2, {0, 1}}};
  return {IdealTriangulation::build(1, 1, std::move(t)), {2, 0}};
}

DecoratedTriangulation make_thrice_punctured_sphere() {
  // Two triangles glued along all three edges (a pillowcase).
  std::vector<std::array<TriSide, 3>> t(2);
  t[0] = {TriSide{0, {1, 0}}, TriSide{1, {1, 2}}, TriSide{2, {1, 1}}};
  t[1] = {TriSide{0, {0, 0}}, TriSide{2, {0, 2}}, TriSide{1, {0, 1}}};
  return {IdealTriangulation::build(0, 3, std::move(t)), {0, 0}};
}

DecoratedTriangulation make_four_punctured_sphere() {
  // Boundary of a tetrahedron; punctures at the four vertices.
  std::vector<std::array<TriSide, 3>> t(4);
  t[0] = {TriSide{5, {1, 0}}, TriSide{3, {3, 0}}, TriSide{4, {2, 0}}};
  t[1] = {TriSide{5, {0, 0}}, TriSide{2, {2, 2}}, TriSide{1, {3, 1}}};
  t[2] = {TriSide{4, {0, 2}}, TriSide{0, {3, 2}}, TriSide{2, {1, 1}}};
  t[3] = {TriSide{3, {0, 1}}, TriSide{1, {1, 2}}, TriSide{0, {2, 1}}};
  return {IdealTriangulation::build(0, 4, std::move(t)), {0, 0, 0, 0}};
}

DecoratedTriangulation make_twice_punctured_torus() {
  // Once-punctured torus with one triangle star-subdivided at a new puncture:
  // triangles 0..2 around the new vertex, triangle 3 the old opposite one.
  std::vector<std::array<TriSide, 3>> t(4);
  t[0] = {TriSide{5, {1, 1}}, TriSide{4, {2, 0}}, TriSide{1, {3, 1}}};
  t[1] = {TriSide{3, {2, 1}}, TriSide{5, {0, 0}}, TriSide{2, {3, 2}}};
  t[2] = {TriSide{4, {0, 1}}, TriSide{3, {1, 0}}, TriSide{0, {3, 0}}};
  t[3] = {TriSide{0, {2, 2}}, TriSide{1, {0, 2}}, TriSide{2, {1, 2}}};
  return {IdealTriangulation::build(1, 2, std::move(t)), {0, 1, 0, 0}};
}

} // namespace

const std::vector<BuiltinSurface>& builtin_surfaces() {
  static const std::vector<BuiltinSurface> all = [] {
    std::vector<BuiltinSurface> v;
    v.push_back({"once-punctured-torus", make_once_punctured_torus()});
    v.push_back({"thrice-punctured-sphere", make_thrice_punctured_sphere()});
    v.push_back({"four-punctured-sphere", make_four_punctured_sphere()});
    v.push_back({"twice-punctured-torus", make_twice_punctured_torus()});
    return v;
  }();
  return all;
}

const DecoratedTriangulation& builtin_surface(const std::string& name) {
  for (const auto& b : builtin_surfaces())
    if (b.name == name) return b.tau;
  throw std::runtime_error("unknown builtin surface: " + name);
}

} // namespace qteich
