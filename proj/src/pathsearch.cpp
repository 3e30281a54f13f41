#include "qteich/pathsearch.hpp"

#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace qteich {

namespace {

std::vector<Move> ideal_moves(const IdealTriangulation& t) {
  std::vector<Move> ms;
  for (int e = 0; e < t.num_edges(); ++e)
    if (t.flippable(e)) ms.push_back(Move::flip(e));
  return ms;
}

std::vector<Move> decorated_moves(const DecoratedTriangulation& t) {
  std::vector<Move> ms;
  for (int tr = 0; tr < t.num_triangles(); ++tr) ms.push_back(Move::mark_rotation(tr));
  for (int i = 0; i < t.num_triangles(); ++i)
    for (int j = i + 1; j < t.num_triangles(); ++j)
      if (t.exchange_applicable(i, j)) ms.push_back(Move::exchange(i, j));
  return ms;
}

// One BFS implementation for both flavors; State must provide the canonical
// string keys, the move menu and the closing reindex move.
template <typename State>
struct SearchTraits;

template <>
struct SearchTraits<IdealTriangulation> {
  static std::string key(const IdealTriangulation& t) { return t.canonical_encoding(true); }
  static std::string invariant(const IdealTriangulation& t) {
    return t.canonical_encoding(false);
  }
  static std::vector<Move> moves(const IdealTriangulation& t) { return ideal_moves(t); }
  static Move reindex(const Perm& p) { return Move::reindex_edges(p); }
};

template <>
struct SearchTraits<DecoratedTriangulation> {
  static std::string key(const DecoratedTriangulation& t) { return t.canonical_encoding(); }
  static std::string invariant(const DecoratedTriangulation& t) {
    return t.relabel_invariant();
  }
  static std::vector<Move> moves(const DecoratedTriangulation& t) {
    return decorated_moves(t);
  }
  static Move reindex(const Perm& p) { return Move::reindex_triangles(p); }
};

template <typename State>
PathSearchResult bfs_path(const State& from, const State& to, int max_depth, int max_nodes) {
  using T = SearchTraits<State>;
  PathSearchResult res;
  const std::string goal_inv = T::invariant(to);

  struct Node {
    State state;
    MoveSeq moves;
  };
  std::vector<Node> level;
  std::set<std::string> seen;
  level.push_back({from, {}});
  seen.insert(T::key(from));

  for (int depth = 0; depth <= max_depth; ++depth) {
    res.explored += static_cast<int>(level.size());
    // an exact hit beats a relabeling closure of the same length
    for (const Node& node : level)
      if (node.state == to) {
        res.found = true;
        res.moves = node.moves;
        return res;
      }
    for (const Node& node : level) {
      if (T::invariant(node.state) != goal_inv) continue;
      if (auto alpha = node.state.relabeling_onto(to)) {
        res.found = true;
        res.moves = node.moves;
        if (*alpha != identity_perm(static_cast<int>(alpha->size())))
          res.moves.push_back(T::reindex(*alpha));
        return res;
      }
    }
    if (depth == max_depth) break;
    std::vector<Node> next_level;
    for (const Node& node : level) {
      if (res.explored + static_cast<int>(next_level.size()) >= max_nodes) {
        res.bound_exceeded = true;
        return res;
      }
      for (const Move& mv : T::moves(node.state)) {
        State next = apply_move(node.state, mv);
        std::string k = T::key(next);
        if (!seen.insert(k).second) continue;
        MoveSeq moves = node.moves;
        moves.push_back(mv);
        next_level.push_back({std::move(next), std::move(moves)});
      }
    }
    if (next_level.empty()) return res; // reachable set exhausted
    level = std::move(next_level);
  }
  res.bound_exceeded = true;
  return res;
}

template <typename State, typename Family>
std::vector<Family> path_families(const State& from, int depth, size_t min_paths,
                                  size_t max_families) {
  using T = SearchTraits<State>;
  // Exhaustive DFS over move sequences up to the depth bound. A path may END
  // at a state it saw before (that is how cycle pairs like flip-flip vs the
  // empty path arise) but never continues from a repeat.
  struct Bucket {
    std::vector<State> rep;
    std::vector<MoveSeq> paths;
  };
  std::map<std::string, Bucket> buckets;
  size_t total = 0;
  const size_t path_cap = 20000;

  std::vector<std::string> on_path;
  MoveSeq current;

  std::function<void(const State&, const std::string&, bool)> dfs =
      [&](const State& s, const std::string& key, bool revisit) {
        Bucket& b = buckets[key];
        if (b.rep.empty()) b.rep.push_back(s);
        b.paths.push_back(current);
        ++total;
        if (revisit || static_cast<int>(current.size()) >= depth || total > path_cap)
          return;
        on_path.push_back(key);
        for (const Move& mv : T::moves(s)) {
          State next = apply_move(s, mv);
          std::string k = T::key(next);
          bool rev = false;
          for (const std::string& seen : on_path)
            if (seen == k) {
              rev = true;
              break;
            }
          current.push_back(mv);
          dfs(next, k, rev);
          current.pop_back();
        }
        on_path.pop_back();
      };
  dfs(from, T::key(from), false);

  std::vector<Family> out;
  for (auto& [key, b] : buckets) {
    if (b.paths.size() < min_paths) continue;
    Family fam{b.rep.front(), std::move(b.paths)};
    out.push_back(std::move(fam));
    if (out.size() >= max_families) break;
  }
  return out;
}

} // namespace

PathSearchResult find_move_path(const IdealTriangulation& from, const IdealTriangulation& to,
                                int max_depth, int max_nodes) {
  if (from.genus() != to.genus() || from.punctures() != to.punctures())
    throw std::invalid_argument("triangulations of different surfaces");
  return bfs_path(from, to, max_depth, max_nodes);
}

PathSearchResult find_move_path(const DecoratedTriangulation& from,
                                const DecoratedTriangulation& to, int max_depth,
                                int max_nodes) {
  if (from.base().genus() != to.base().genus() ||
      from.base().punctures() != to.base().punctures())
    throw std::invalid_argument("triangulations of different surfaces");
  return bfs_path(from, to, max_depth, max_nodes);
}

std::vector<IdealPathFamily> ideal_path_families(const IdealTriangulation& from, int depth,
                                                 size_t min_paths, size_t max_families) {
  return path_families<IdealTriangulation, IdealPathFamily>(from, depth, min_paths,
                                                            max_families);
}

std::vector<DecoratedPathFamily> decorated_path_families(const DecoratedTriangulation& from,
                                                         int depth, size_t min_paths,
                                                         size_t max_families) {
  return path_families<DecoratedTriangulation, DecoratedPathFamily>(from, depth, min_paths,
                                                                    max_families);
}

} // namespace qteich
