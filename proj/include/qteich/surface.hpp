#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qteich {

/// One of the three sides of a triangle. Sides are numbered 0,1,2
/// counterclockwise in the surface orientation; side s is opposite corner s.
struct SideRef {
  int tri = -1;
  int side = -1;
  bool operator==(const SideRef& o) const { return tri == o.tri && side == o.side; }
  bool operator!=(const SideRef& o) const { return !(*this == o); }
  bool operator<(const SideRef& o) const {
    return tri != o.tri ? tri < o.tri : side < o.side;
  }
};

inline int next_side(int s) { return (s + 1) % 3; }
inline int prev_side(int s) { return (s + 2) % 3; }

/// Permutation of {0..n-1}; p[i] is the image of i.
using Perm = std::vector<int>;
Perm identity_perm(int n);
Perm compose_perm(const Perm& a, const Perm& b); // (a o b)(i) = a[b[i]]
Perm inverse_perm(const Perm& p);
Perm transposition(int n, int i, int j);
bool is_perm(const Perm& p);

/// Gluing record for one triangle side.
struct TriSide {
  int edge = -1;   // edge label, 0-based
  SideRef partner; // the side it is glued to
};

/// Outcome of classifying a diagonal exchange square. The four surrounding
/// role slots are read counterclockwise: in the first triangle the side after
/// the diagonal plays role j and the next role m; in the second triangle the
/// side after the diagonal plays role l and the next role k. Opposite roles
/// {j,l} and {k,m} transform with the same factor.
struct FlipCase {
  int case_id = 0;         // 1..8 identification pattern
  SideRef a, b;            // the diagonal's two side slots, in role order
  int ej = -1, ek = -1, el = -1, em = -1; // edges in roles j,k,l,m
};

/// An ideal triangulation of a punctured surface, encoded as 2m labeled
/// oriented triangles with a fixed-point-free side gluing and edge labels
/// 0..3m-1. Immutable once built; moves return new values.
///
/// Triangulations compare equal when they differ only by renumbering the
/// triangles and rotating side numberings (edge labels must match on the
/// nose). Comparison goes through a canonical encoding so values can be
/// hashed for path search.
class IdealTriangulation {
public:
  /// Validates the gluing: involution without fixed points, consistent edge
  /// labels, connectedness, m = 2g-2+p > 0 and matching vertex/Euler counts.
  static IdealTriangulation build(int genus, int punctures,
                                  std::vector<std::array<TriSide, 3>> table);

  int genus() const { return genus_; }
  int punctures() const { return punctures_; }
  int m() const { return static_cast<int>(table_.size()) / 2; }
  int num_triangles() const { return static_cast<int>(table_.size()); }
  int num_edges() const { return 3 * m(); }

  int edge_at(SideRef s) const { return table_[s.tri][s.side].edge; }
  SideRef partner(SideRef s) const { return table_[s.tri][s.side].partner; }
  /// The edge's two side slots, lexicographically sorted.
  const std::array<SideRef, 2>& edge_slots(int e) const { return slots_[e]; }
  bool is_self_folded(int e) const { return slots_[e][0].tri == slots_[e][1].tri; }
  bool flippable(int e) const { return !is_self_folded(e); }
  const std::array<TriSide, 3>& triangle(int t) const { return table_[t]; }

  /// Spike-count matrix a_ij: spikes delimited on the left by edge i and on
  /// the right by edge j. At corner c the left delimiter is side c+2 and the
  /// right delimiter side c+1.
  std::vector<std::vector<int>> corner_counts() const;
  /// sigma_ij = a_ij - a_ji; antisymmetric with entries in {-2..2}.
  std::vector<std::vector<int>> skew_form() const;

  FlipCase classify_flip(int e) const;
  IdealTriangulation flip(int e) const; // diagonal exchange, edge keeps its label
  IdealTriangulation reindex_edges(const Perm& alpha) const; // new label of edge e is alpha[e]

  /// Canonical encoding, minimal over all starting darts; with_labels=false
  /// erases edge labels (used to detect equality up to relabeling).
  std::string canonical_encoding(bool with_labels = true) const;
  bool operator==(const IdealTriangulation& o) const;
  bool operator!=(const IdealTriangulation& o) const { return !(*this == o); }

  /// An edge relabeling alpha with reindex_edges(alpha) == target, if any.
  std::optional<Perm> relabeling_onto(const IdealTriangulation& target) const;

  /// Triples (i, j) of flippable edges that are the diagonals of a pentagon:
  /// three pairwise distinct triangles chained through i and j.
  struct PentagonSpot {
    int edge_i, edge_j;
  };
  std::vector<PentagonSpot> pentagon_spots() const;

private:
  int genus_ = 0, punctures_ = 0;
  std::vector<std::array<TriSide, 3>> table_;
  std::vector<std::array<SideRef, 2>> slots_;

  friend class DecoratedTriangulation;
  static std::vector<std::array<TriSide, 3>> flip_table(
      const std::vector<std::array<TriSide, 3>>& table, SideRef a, SideRef b);
  void rebuild_slots();
};

/// Decorated ideal triangulation: numbered triangles, each with a marked
/// corner. Decorated side s of a triangle is stored side (mark + s) mod 3, so
/// the 0-side is opposite the mark. Equality ignores edge labels (no
/// decorated move can change them) but is exact on triangle numbering, marks
/// and gluing, up to internal side-numbering rotations.
class DecoratedTriangulation {
public:
  DecoratedTriangulation(IdealTriangulation base, std::vector<int> marks);

  const IdealTriangulation& base() const { return base_; }
  int num_triangles() const { return base_.num_triangles(); }
  int mark(int t) const { return marks_[t]; }

  int stored_side(int t, int dec_side) const { return (marks_[t] + dec_side) % 3; }
  int dec_side(int t, int stored) const { return (stored - marks_[t] + 3) % 3; }
  int edge_at_dec(int t, int dec) const {
    return base_.edge_at({t, stored_side(t, dec)});
  }

  /// Mark rotation rho_t: the mark moves one corner counterclockwise.
  DecoratedTriangulation mark_rotation(int t) const;

  /// Decorated exchange phi_{ij}: requires triangles i and j to share an edge
  /// that is the 0-side of both; rotates the interior of their union 90
  /// degrees clockwise.
  bool exchange_applicable(int i, int j) const;
  int exchange_edge(int i, int j) const; // the shared edge; -1 if not applicable
  DecoratedTriangulation exchange(int i, int j) const;

  DecoratedTriangulation reindex_triangles(const Perm& alpha) const; // new index of t is alpha[t]

  std::string canonical_encoding() const;
  bool operator==(const DecoratedTriangulation& o) const;
  bool operator!=(const DecoratedTriangulation& o) const { return !(*this == o); }

  /// Invariant under triangle relabeling; equal invariants are a necessary
  /// condition for relabeling_onto to succeed (cheap pre-filter in search).
  std::string relabel_invariant() const;

  /// A triangle relabeling alpha with reindex_triangles(alpha) == target.
  std::optional<Perm> relabeling_onto(const DecoratedTriangulation& target) const;

  /// Pentagon configurations for the omega moves: ordered triples (i,j,k) of
  /// distinct triangles where some edge is the 0-side of tau_i and 1-side of
  /// tau_j, and another is the 0-side of tau_j and 1-side of tau_k.
  struct PentagonSpot {
    int ti, tj, tk;
  };
  std::vector<PentagonSpot> pentagon_spots() const;

private:
  IdealTriangulation base_;
  std::vector<int> marks_;
};

/// Elementary transformation of a (decorated) triangulation.
struct Move {
  enum class Kind { FlipEdge, ReindexEdges, MarkRotation, Exchange, ReindexTriangles };
  Kind kind;
  int edge = -1;         // FlipEdge
  int tri = -1;          // MarkRotation
  int tri_i = -1, tri_j = -1; // Exchange
  Perm perm;             // Reindex*

  static Move flip(int e) { return {Kind::FlipEdge, e, -1, -1, -1, {}}; }
  static Move reindex_edges(Perm p) { return {Kind::ReindexEdges, -1, -1, -1, -1, std::move(p)}; }
  static Move mark_rotation(int t) { return {Kind::MarkRotation, -1, t, -1, -1, {}}; }
  static Move exchange(int i, int j) { return {Kind::Exchange, -1, -1, i, j, {}}; }
  static Move reindex_triangles(Perm p) {
    return {Kind::ReindexTriangles, -1, -1, -1, -1, std::move(p)};
  }
  std::string str() const;
};

IdealTriangulation apply_move(const IdealTriangulation& t, const Move& mv);
DecoratedTriangulation apply_move(const DecoratedTriangulation& t, const Move& mv);

using MoveSeq = std::vector<Move>;
IdealTriangulation apply_moves(IdealTriangulation t, const MoveSeq& seq);
DecoratedTriangulation apply_moves(DecoratedTriangulation t, const MoveSeq& seq);

} // namespace qteich
