#pragma once

#include "qteich/surface.hpp"

#include <string>
#include <vector>

namespace qteich {

// Text format "qtsurf v1", one record per line, '#' starts a comment:
//
//   qtsurf v1
//   genus 1
//   punctures 1
//   triangles 2
//   tri 1 mark 2 : 2 2 1  3 2 2  1 2 0
//   tri 2 mark 0 : 1 1 2  2 1 0  3 1 1
//
// Each triangle line lists its three sides in order; a side record is
// "edge partner_triangle partner_side" with 1-based edge and triangle labels
// and 0-based sides. "mark -" (or omitting the mark clause) gives an
// undecorated triangulation; when loading one as decorated, all marks
// default to corner 0.

std::string serialize_surface(const DecoratedTriangulation& tau);
std::string serialize_surface(const IdealTriangulation& lam);

struct ParsedSurface {
  IdealTriangulation lam;
  bool decorated = false;
  std::vector<int> marks; // all zero when not decorated

  DecoratedTriangulation as_decorated() const { return {lam, marks}; }
};
ParsedSurface parse_surface(const std::string& text);
ParsedSurface load_surface_file(const std::string& path);

struct BuiltinSurface {
  std::string name;
  DecoratedTriangulation tau;
};
/// Bundled desk-scale surfaces (each decorated): once-punctured torus,
/// thrice-punctured sphere, four-punctured sphere, twice-punctured torus.
const std::vector<BuiltinSurface>& builtin_surfaces();
const DecoratedTriangulation& builtin_surface(const std::string& name);

} // namespace qteich
