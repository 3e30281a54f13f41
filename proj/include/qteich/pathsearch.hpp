#pragma once

#include "qteich/surface.hpp"

#include <vector>

namespace qteich {

struct PathSearchResult {
  bool found = false;
  bool bound_exceeded = false;
  MoveSeq moves;
  int explored = 0;

  explicit operator bool() const { return found; }
};

/// Breadth-first search over diagonal exchanges from `from`, closing with a
/// single edge reindexing when the target is reached up to relabeling. Exact
/// labeled equality of the replayed sequence with `to` is guaranteed.
PathSearchResult find_move_path(const IdealTriangulation& from, const IdealTriangulation& to,
                                int max_depth = 12, int max_nodes = 200000);

/// Same over mark rotations and decorated exchanges, closing with a triangle
/// reindexing when needed.
PathSearchResult find_move_path(const DecoratedTriangulation& from,
                                const DecoratedTriangulation& to, int max_depth = 12,
                                int max_nodes = 200000);

/// All simple move sequences (no state revisited along a path) from `from` of
/// length <= depth, grouped by endpoint; only endpoints with at least
/// `min_paths` distinct sequences are returned. Deterministic order.
struct IdealPathFamily {
  IdealTriangulation endpoint;
  std::vector<MoveSeq> paths;
};
std::vector<IdealPathFamily> ideal_path_families(const IdealTriangulation& from, int depth,
                                                 size_t min_paths, size_t max_families);

struct DecoratedPathFamily {
  DecoratedTriangulation endpoint;
  std::vector<MoveSeq> paths;
};
std::vector<DecoratedPathFamily> decorated_path_families(const DecoratedTriangulation& from,
                                                         int depth, size_t min_paths,
                                                         size_t max_families);

} // namespace qteich
