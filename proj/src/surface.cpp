#include "qteich/surface.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace qteich {

Perm identity_perm(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm compose_perm(const Perm& a, const Perm& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutation size mismatch");
  Perm r(a.size());
  for (size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

Perm inverse_perm(const Perm& p) {
  Perm r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

Perm transposition(int n, int i, int j) {
  Perm p = identity_perm(n);
  std::swap(p[i], p[j]);
  return p;
}

bool is_perm(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

IdealTriangulation IdealTriangulation::build(int genus, int punctures,
                                             std::vector<std::array<TriSide, 3>> table) {
  IdealTriangulation t;
  t.genus_ = genus;
  t.punctures_ = punctures;
  t.table_ = std::move(table);

  const int tris = t.num_triangles();
  if (tris == 0 || tris % 2 != 0) throw std::invalid_argument("triangle count must be even and positive");
  const int m = tris / 2;
  if (punctures < 1 || m != 2 * genus - 2 + punctures)
    throw std::invalid_argument("triangle count incompatible with genus and puncture count");
  const int edges = 3 * m;

  auto in_range = [&](SideRef s) {
    return s.tri >= 0 && s.tri < tris && s.side >= 0 && s.side < 3;
  };
  for (int tr = 0; tr < tris; ++tr)
    for (int s = 0; s < 3; ++s) {
      const TriSide& rec = t.table_[tr][s];
      if (rec.edge < 0 || rec.edge >= edges) throw std::invalid_argument("edge label out of range");
      if (!in_range(rec.partner)) throw std::invalid_argument("gluing partner out of range");
      SideRef here{tr, s};
      if (rec.partner == here) throw std::invalid_argument("side glued to itself");
      const TriSide& back = t.table_[rec.partner.tri][rec.partner.side];
      if (back.partner != here) throw std::invalid_argument("gluing is not an involution");
      if (back.edge != rec.edge) throw std::invalid_argument("edge label differs across a gluing");
    }

  t.rebuild_slots();
  for (int e = 0; e < edges; ++e)
    if (t.slots_[e][0].tri < 0) throw std::invalid_argument("edge label unused");

  // connectivity over triangle adjacency
  std::vector<bool> seen(tris, false);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = true;
  int found = 1;
  while (!bfs.empty()) {
    int tr = bfs.front();
    bfs.pop();
    for (int s = 0; s < 3; ++s) {
      int nb = t.table_[tr][s].partner.tri;
      if (!seen[nb]) {
        seen[nb] = true;
        ++found;
        bfs.push(nb);
      }
    }
  }
  if (found != tris) throw std::invalid_argument("surface is not connected");

  // vertex count: orbits of corners under the orientation-reversing gluings.
  // Side s runs counterclockwise from corner s+1 to corner s+2, so a gluing
  // identifies (t, s+1) with (t', s'+2) and (t, s+2) with (t', s'+1).
  UnionFind uf(3 * tris);
  auto corner_id = [](SideRef c) { return 3 * c.tri + c.side; };
  for (int tr = 0; tr < tris; ++tr)
    for (int s = 0; s < 3; ++s) {
      SideRef p = t.table_[tr][s].partner;
      uf.unite(corner_id({tr, next_side(s)}), corner_id({p.tri, prev_side(p.side)}));
      uf.unite(corner_id({tr, prev_side(s)}), corner_id({p.tri, next_side(p.side)}));
    }
  int vertices = 0;
  for (int c = 0; c < 3 * tris; ++c)
    if (uf.find(c) == c) ++vertices;
  if (vertices != punctures)
    throw std::invalid_argument("vertex count does not match the puncture count");

  return t;
}

void IdealTriangulation::rebuild_slots() {
  slots_.assign(num_edges(), {SideRef{-1, -1}, SideRef{-1, -1}});
  for (int tr = 0; tr < num_triangles(); ++tr)
    for (int s = 0; s < 3; ++s) {
      int e = table_[tr][s].edge;
      SideRef here{tr, s};
      if (slots_[e][0].tri < 0) {
        slots_[e][0] = here;
      } else if (slots_[e][1].tri < 0) {
        if (here < slots_[e][0]) std::swap(slots_[e][0], here);
        slots_[e][1] = here;
      } else {
        throw std::invalid_argument("edge label used more than twice");
      }
    }
  for (int e = 0; e < num_edges(); ++e)
    if (slots_[e][0].tri >= 0 && slots_[e][1].tri < 0)
      throw std::invalid_argument("edge label used only once");
}

std::vector<std::vector<int>> IdealTriangulation::corner_counts() const {
  const int n = num_edges();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int tr = 0; tr < num_triangles(); ++tr)
    for (int c = 0; c < 3; ++c) {
      int left = edge_at({tr, prev_side(c)});
      int right = edge_at({tr, next_side(c)});
      a[left][right] += 1;
    }
  return a;
}

std::vector<std::vector<int>> IdealTriangulation::skew_form() const {
  auto a = corner_counts();
  const int n = num_edges();
  std::vector<std::vector<int>> s(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s[i][j] = a[i][j] - a[j][i];
  return s;
}

namespace {

int flip_pattern(int j, int k, int l, int m) {
  const bool jk = j == k, jm = j == m, jl = j == l;
  const bool km = k == m, kl = k == l, lm = l == m;
  const int pairs = jk + jm + jl + km + kl + lm;
  if (pairs == 0) return 1;
  if (jk && lm) return 6;
  if (jm && kl) return 7;
  if (jl && km) return 8;
  if (pairs == 1) {
    if (jk) return 2;
    if (jm) return 3;
    if (jl) return 4;
    if (km) return 5;
  }
  return 0; // pattern visible only from the other triangle ordering
}

} // namespace

FlipCase IdealTriangulation::classify_flip(int e) const {
  if (e < 0 || e >= num_edges()) throw std::invalid_argument("edge index out of range");
  if (is_self_folded(e))
    throw std::invalid_argument("diagonal exchange needs an edge adjacent to two triangles");
  auto roles = [this](SideRef a, SideRef b) {
    FlipCase fc;
    fc.a = a;
    fc.b = b;
    fc.ej = edge_at({a.tri, next_side(a.side)});
    fc.em = edge_at({a.tri, prev_side(a.side)});
    fc.el = edge_at({b.tri, next_side(b.side)});
    fc.ek = edge_at({b.tri, prev_side(b.side)});
    fc.case_id = flip_pattern(fc.ej, fc.ek, fc.el, fc.em);
    return fc;
  };
  FlipCase fc = roles(slots_[e][0], slots_[e][1]);
  if (fc.case_id == 0) fc = roles(slots_[e][1], slots_[e][0]);
  if (fc.case_id == 0) throw std::logic_error("unclassifiable flip square");
  return fc;
}

std::vector<std::array<TriSide, 3>> IdealTriangulation::flip_table(
    const std::vector<std::array<TriSide, 3>>& table, SideRef a, SideRef b) {
  // Square around the diagonal, counterclockwise: j (after the diagonal in
  // triangle a), m, then l (after the diagonal in triangle b), k. The new
  // diagonal joins the other two corners; afterwards triangle a holds (diag,
  // k, j) and triangle b holds (diag, m, l), sides listed counterclockwise
  // from the diagonal.
  SideRef J{a.tri, next_side(a.side)}, M{a.tri, prev_side(a.side)};
  SideRef L{b.tri, next_side(b.side)}, K{b.tri, prev_side(b.side)};

  auto remap = [&](SideRef s) -> SideRef {
    if (s == a) return {a.tri, 0};
    if (s == b) return {b.tri, 0};
    if (s == J) return {a.tri, 2};
    if (s == K) return {a.tri, 1};
    if (s == M) return {b.tri, 1};
    if (s == L) return {b.tri, 2};
    return s;
  };
  auto source = [&](SideRef ns) -> SideRef {
    if (ns == SideRef{a.tri, 0}) return a;
    if (ns == SideRef{b.tri, 0}) return b;
    if (ns == SideRef{a.tri, 2}) return J;
    if (ns == SideRef{a.tri, 1}) return K;
    if (ns == SideRef{b.tri, 1}) return M;
    if (ns == SideRef{b.tri, 2}) return L;
    return ns;
  };

  std::vector<std::array<TriSide, 3>> out(table.size());
  for (int tr = 0; tr < static_cast<int>(table.size()); ++tr)
    for (int s = 0; s < 3; ++s) {
      SideRef src = source({tr, s});
      const TriSide& rec = table[src.tri][src.side];
      out[tr][s] = TriSide{rec.edge, remap(rec.partner)};
    }
  return out;
}

IdealTriangulation IdealTriangulation::flip(int e) const {
  FlipCase fc = classify_flip(e);
  return build(genus_, punctures_, flip_table(table_, fc.a, fc.b));
}

IdealTriangulation IdealTriangulation::reindex_edges(const Perm& alpha) const {
  if (static_cast<int>(alpha.size()) != num_edges() || !is_perm(alpha))
    throw std::invalid_argument("invalid edge relabeling");
  auto t2 = table_;
  for (auto& tri : t2)
    for (auto& rec : tri) rec.edge = alpha[rec.edge];
  return build(genus_, punctures_, std::move(t2));
}

namespace {

// Dart-rooted traversal encoding shared by the canonical forms. Returns the
// serialized table plus the traversal orders of triangles and edges.
struct DartEncoding {
  std::string text;
  std::vector<int> tri_order;  // traversal position -> original triangle
  std::vector<int> edge_order; // first-appearance position -> edge label
};

DartEncoding encode_from_dart(const std::vector<std::array<TriSide, 3>>& table, int g, int p,
                              int t0, int rot0, bool with_labels,
                              const std::vector<int>* fixed_rot) {
  const int tris = static_cast<int>(table.size());
  std::vector<int> num(tris, -1), rot(tris, 0);
  std::vector<int> order;
  order.reserve(tris);
  num[t0] = 0;
  rot[t0] = fixed_rot ? (*fixed_rot)[t0] : rot0;
  order.push_back(t0);
  std::vector<int> edge_pos(3 * (tris / 2), -1);
  std::vector<int> edge_order;
  std::ostringstream os;
  os << g << "," << p << ";";
  for (size_t head = 0; head < order.size(); ++head) {
    int tr = order[head];
    for (int s = 0; s < 3; ++s) {
      int stored = (rot[tr] + s) % 3;
      const TriSide& rec = table[tr][stored];
      if (num[rec.partner.tri] < 0) {
        num[rec.partner.tri] = static_cast<int>(order.size());
        rot[rec.partner.tri] =
            fixed_rot ? (*fixed_rot)[rec.partner.tri] : rec.partner.side;
        order.push_back(rec.partner.tri);
      }
      if (with_labels) {
        os << rec.edge;
      } else {
        if (edge_pos[rec.edge] < 0) {
          edge_pos[rec.edge] = static_cast<int>(edge_order.size());
          edge_order.push_back(rec.edge);
        }
        os << "e" << edge_pos[rec.edge];
      }
      int pside = (rec.partner.side - rot[rec.partner.tri] + 3) % 3;
      os << ":" << num[rec.partner.tri] << "." << pside << " ";
    }
    os << "|";
  }
  return {os.str(), std::move(order), std::move(edge_order)};
}

} // namespace

std::string IdealTriangulation::canonical_encoding(bool with_labels) const {
  std::string best;
  for (int t0 = 0; t0 < num_triangles(); ++t0)
    for (int r = 0; r < 3; ++r) {
      DartEncoding enc =
          encode_from_dart(table_, genus_, punctures_, t0, r, with_labels, nullptr);
      if (best.empty() || enc.text < best) best = enc.text;
    }
  return best;
}

bool IdealTriangulation::operator==(const IdealTriangulation& o) const {
  if (genus_ != o.genus_ || punctures_ != o.punctures_ ||
      num_triangles() != o.num_triangles())
    return false;
  return canonical_encoding(true) == o.canonical_encoding(true);
}

std::optional<Perm> IdealTriangulation::relabeling_onto(const IdealTriangulation& target) const {
  if (genus_ != target.genus_ || punctures_ != target.punctures_ ||
      num_triangles() != target.num_triangles())
    return std::nullopt;
  // Pick one minimal unlabeled dart here, then try every minimal dart of the
  // target; any isomorphism must pair them up.
  std::string best;
  DartEncoding mine;
  for (int t0 = 0; t0 < num_triangles(); ++t0)
    for (int r = 0; r < 3; ++r) {
      DartEncoding enc = encode_from_dart(table_, genus_, punctures_, t0, r, false, nullptr);
      if (best.empty() || enc.text < best) {
        best = enc.text;
        mine = enc;
      }
    }
  for (int t0 = 0; t0 < target.num_triangles(); ++t0)
    for (int r = 0; r < 3; ++r) {
      DartEncoding enc =
          encode_from_dart(target.table_, genus_, punctures_, t0, r, false, nullptr);
      if (enc.text != best) continue;
      Perm alpha(num_edges(), -1);
      for (size_t pos = 0; pos < mine.edge_order.size(); ++pos)
        alpha[mine.edge_order[pos]] = enc.edge_order[pos];
      if (!is_perm(alpha)) continue;
      if (reindex_edges(alpha) == target) return alpha;
    }
  return std::nullopt;
}

std::vector<IdealTriangulation::PentagonSpot> IdealTriangulation::pentagon_spots() const {
  std::vector<PentagonSpot> spots;
  for (int i = 0; i < num_edges(); ++i) {
    if (is_self_folded(i)) continue;
    for (int j = i + 1; j < num_edges(); ++j) {
      if (is_self_folded(j)) continue;
      std::array<int, 2> ti{slots_[i][0].tri, slots_[i][1].tri};
      std::array<int, 2> tj{slots_[j][0].tri, slots_[j][1].tri};
      int shared = 0, middle = -1;
      for (int x : ti)
        for (int y : tj)
          if (x == y) {
            ++shared;
            middle = x;
          }
      if (shared != 1) continue;
      int a = ti[0] == middle ? ti[1] : ti[0];
      int c = tj[0] == middle ? tj[1] : tj[0];
      if (a == c || a == middle || c == middle) continue;
      spots.push_back({i, j});
    }
  }
  return spots;
}

DecoratedTriangulation::DecoratedTriangulation(IdealTriangulation base, std::vector<int> marks)
    : base_(std::move(base)), marks_(std::move(marks)) {
  if (static_cast<int>(marks_.size()) != base_.num_triangles())
    throw std::invalid_argument("one mark per triangle required");
  for (int m : marks_)
    if (m < 0 || m > 2) throw std::invalid_argument("mark must be a corner index 0..2");
}

DecoratedTriangulation DecoratedTriangulation::mark_rotation(int t) const {
  if (t < 0 || t >= num_triangles()) throw std::invalid_argument("triangle index out of range");
  auto marks = marks_;
  marks[t] = (marks[t] + 1) % 3;
  return DecoratedTriangulation(base_, std::move(marks));
}

bool DecoratedTriangulation::exchange_applicable(int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= num_triangles() || j >= num_triangles()) return false;
  return base_.partner({i, marks_[i]}) == SideRef{j, marks_[j]};
}

int DecoratedTriangulation::exchange_edge(int i, int j) const {
  if (!exchange_applicable(i, j)) return -1;
  return base_.edge_at({i, marks_[i]});
}

DecoratedTriangulation DecoratedTriangulation::exchange(int i, int j) const {
  if (!exchange_applicable(i, j))
    throw std::invalid_argument("exchange needs both marks opposite the shared edge");
  // Triangle i plays the first role of the square; afterwards both new
  // triangles carry their mark opposite the new diagonal, which sits at
  // stored side 0.
  auto table = IdealTriangulation::flip_table(base_.table_, {i, marks_[i]}, {j, marks_[j]});
  IdealTriangulation nb =
      IdealTriangulation::build(base_.genus(), base_.punctures(), std::move(table));
  auto marks = marks_;
  marks[i] = 0;
  marks[j] = 0;
  return DecoratedTriangulation(std::move(nb), std::move(marks));
}

DecoratedTriangulation DecoratedTriangulation::reindex_triangles(const Perm& alpha) const {
  if (static_cast<int>(alpha.size()) != num_triangles() || !is_perm(alpha))
    throw std::invalid_argument("invalid triangle relabeling");
  std::vector<std::array<TriSide, 3>> t2(num_triangles());
  std::vector<int> marks(num_triangles());
  for (int tr = 0; tr < num_triangles(); ++tr) {
    for (int s = 0; s < 3; ++s) {
      TriSide rec = base_.table_[tr][s];
      rec.partner.tri = alpha[rec.partner.tri];
      t2[alpha[tr]][s] = rec;
    }
    marks[alpha[tr]] = marks_[tr];
  }
  return DecoratedTriangulation(
      IdealTriangulation::build(base_.genus(), base_.punctures(), std::move(t2)),
      std::move(marks));
}

std::string DecoratedTriangulation::canonical_encoding() const {
  // Triangle numbering is part of the data and side rotations are pinned by
  // the marks, so a single pass serialization is canonical. Edge labels are
  // deliberately absent: no decorated move can change them.
  std::ostringstream os;
  os << base_.genus() << "," << base_.punctures() << ";";
  for (int t = 0; t < num_triangles(); ++t) {
    for (int d = 0; d < 3; ++d) {
      SideRef p = base_.partner({t, stored_side(t, d)});
      os << p.tri << "." << dec_side(p.tri, p.side) << " ";
    }
    os << "|";
  }
  return os.str();
}

bool DecoratedTriangulation::operator==(const DecoratedTriangulation& o) const {
  return canonical_encoding() == o.canonical_encoding();
}

std::string DecoratedTriangulation::relabel_invariant() const {
  std::string best;
  for (int t0 = 0; t0 < num_triangles(); ++t0) {
    DartEncoding enc = encode_from_dart(base_.table_, base_.genus(), base_.punctures(), t0,
                                        marks_[t0], false, &marks_);
    if (best.empty() || enc.text < best) best = enc.text;
  }
  return best;
}

std::optional<Perm> DecoratedTriangulation::relabeling_onto(
    const DecoratedTriangulation& target) const {
  if (num_triangles() != target.num_triangles() ||
      base_.genus() != target.base_.genus() ||
      base_.punctures() != target.base_.punctures())
    return std::nullopt;
  // Same dart-minimization idea as for ideal triangulations, with rotations
  // fixed by the marks and triangles as the relabeled objects.
  auto encode = [](const DecoratedTriangulation& dt, int t0) {
    return encode_from_dart(dt.base_.table_, dt.base_.genus(), dt.base_.punctures(), t0,
                            dt.marks_[t0], false, &dt.marks_);
  };
  std::string best;
  DartEncoding mine;
  for (int t0 = 0; t0 < num_triangles(); ++t0) {
    DartEncoding enc = encode(*this, t0);
    if (best.empty() || enc.text < best) {
      best = enc.text;
      mine = enc;
    }
  }
  for (int t0 = 0; t0 < num_triangles(); ++t0) {
    DartEncoding enc = encode(target, t0);
    if (enc.text != best) continue;
    Perm alpha(num_triangles(), -1);
    for (size_t pos = 0; pos < mine.tri_order.size(); ++pos)
      alpha[mine.tri_order[pos]] = enc.tri_order[pos];
    if (!is_perm(alpha)) continue;
    if (reindex_triangles(alpha) == target) return alpha;
  }
  return std::nullopt;
}

std::vector<DecoratedTriangulation::PentagonSpot> DecoratedTriangulation::pentagon_spots()
    const {
  std::vector<PentagonSpot> spots;
  const int n = num_triangles();
  for (int tj = 0; tj < n; ++tj) {
    SideRef p1 = base_.partner({tj, stored_side(tj, 1)}); // 1-side of tau_j
    SideRef p0 = base_.partner({tj, stored_side(tj, 0)}); // 0-side of tau_j
    int ti = p1.tri, tk = p0.tri;
    if (ti == tj || tk == tj || ti == tk) continue;
    // edge between tau_i and tau_j must be the 0-side of tau_i
    if (dec_side(ti, p1.side) != 0) continue;
    // edge between tau_j and tau_k must be the 1-side of tau_k
    if (dec_side(tk, p0.side) != 1) continue;
    spots.push_back({ti, tj, tk});
  }
  return spots;
}

std::string Move::str() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::FlipEdge:
      os << "flip " << edge + 1;
      break;
    case Kind::MarkRotation:
      os << "rho " << tri + 1;
      break;
    case Kind::Exchange:
      os << "exchange " << tri_i + 1 << " " << tri_j + 1;
      break;
    case Kind::ReindexEdges:
    case Kind::ReindexTriangles:
      os << (kind == Kind::ReindexEdges ? "reindex-edges" : "reindex-triangles");
      for (int v : perm) os << " " << v + 1;
      break;
  }
  return os.str();
}

IdealTriangulation apply_move(const IdealTriangulation& t, const Move& mv) {
  switch (mv.kind) {
    case Move::Kind::FlipEdge:
      return t.flip(mv.edge);
    case Move::Kind::ReindexEdges:
      return t.reindex_edges(mv.perm);
    default:
      throw std::invalid_argument("move not defined on ideal triangulations");
  }
}

DecoratedTriangulation apply_move(const DecoratedTriangulation& t, const Move& mv) {
  switch (mv.kind) {
    case Move::Kind::MarkRotation:
      return t.mark_rotation(mv.tri);
    case Move::Kind::Exchange:
      return t.exchange(mv.tri_i, mv.tri_j);
    case Move::Kind::ReindexTriangles:
      return t.reindex_triangles(mv.perm);
    default:
      throw std::invalid_argument("move not defined on decorated triangulations");
  }
}

IdealTriangulation apply_moves(IdealTriangulation t, const MoveSeq& seq) {
  for (const Move& mv : seq) t = apply_move(t, mv);
  return t;
}

DecoratedTriangulation apply_moves(DecoratedTriangulation t, const MoveSeq& seq) {
  for (const Move& mv : seq) t = apply_move(t, mv);
  return t;
}

} // namespace qteich
