#include "qteich/classical.hpp"

#include "qteich/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qteich {

double softplus(double u) {
  if (u > 0) return u + std::log1p(std::exp(-u));
  return std::log1p(std::exp(u));
}

double log_add_exp(double a, double b) {
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

double rel_err(double a, double b) {
  double scale = std::max({std::fabs(a), std::fabs(b), 1e-100});
  return std::fabs(a - b) / scale;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

LogShear shear_flip_log(const IdealTriangulation& lam, int edge, const LogShear& x) {
  if (static_cast<int>(x.size()) != lam.num_edges())
    throw std::invalid_argument("shear vector size mismatch");
  FlipCase fc = lam.classify_flip(edge);
  const double u = x[edge];
  const double up = softplus(u);   // ln(1 + x_i)
  const double um = softplus(-u);  // ln(1 + 1/x_i)
  LogShear r = x;
  r[edge] = -u;
  switch (fc.case_id) {
    case 1:
      r[fc.ej] += up;
      r[fc.el] += up;
      r[fc.ek] -= um;
      r[fc.em] -= um;
      break;
    case 2: // j identified with k
      r[fc.ej] += u;
      r[fc.el] += up;
      r[fc.em] -= um;
      break;
    case 3: // j identified with m
      r[fc.ej] += u;
      r[fc.ek] -= um;
      r[fc.el] += up;
      break;
    case 4: // j identified with l
      r[fc.ej] += 2 * up;
      r[fc.ek] -= um;
      r[fc.em] -= um;
      break;
    case 5: // k identified with m
      r[fc.ej] += up;
      r[fc.el] += up;
      r[fc.ek] -= 2 * um;
      break;
    case 6: // j=k, l=m
      r[fc.ej] += u;
      r[fc.el] += u;
      break;
    case 7: // j=m, k=l
      r[fc.ej] += u;
      r[fc.ek] += u;
      break;
    case 8: // j=l, k=m
      r[fc.ej] += 2 * up;
      r[fc.ek] -= 2 * um;
      break;
    default:
      throw std::logic_error("unknown flip case");
  }
  return r;
}

std::vector<double> shear_flip_exp(const IdealTriangulation& lam, int edge,
                                   const std::vector<double>& x) {
  LogShear lx(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0)) throw std::invalid_argument("shear coordinates must be positive");
    lx[i] = std::log(x[i]);
  }
  LogShear ly = shear_flip_log(lam, edge, lx);
  std::vector<double> y(ly.size());
  for (size_t i = 0; i < ly.size(); ++i) y[i] = std::exp(ly[i]);
  return y;
}

LogKashaev kashaev_change_log(const DecoratedTriangulation& tau, const Move& mv,
                              const LogKashaev& k) {
  if (static_cast<int>(k.size()) != 4 * tau.base().m())
    throw std::invalid_argument("Kashaev vector size mismatch");
  LogKashaev r = k;
  switch (mv.kind) {
    case Move::Kind::MarkRotation: {
      int t = mv.tri;
      if (t < 0 || t >= tau.num_triangles())
        throw std::invalid_argument("triangle index out of range");
      // (y, z) -> (z/y, 1/y)
      r[ky(t)] = k[kz(t)] - k[ky(t)];
      r[kz(t)] = -k[ky(t)];
      return r;
    }
    case Move::Kind::Exchange: {
      int i = mv.tri_i, j = mv.tri_j;
      if (!tau.exchange_applicable(i, j))
        throw std::invalid_argument("exchange not applicable");
      double d = log_add_exp(k[ky(i)] + k[ky(j)], k[kz(i)] + k[kz(j)]);
      r[ky(i)] = k[kz(j)] - d;
      r[kz(i)] = k[ky(i)] - d;
      r[ky(j)] = k[kz(i)] - d;
      r[kz(j)] = k[ky(j)] - d;
      return r;
    }
    case Move::Kind::ReindexTriangles: {
      const Perm& a = mv.perm;
      if (static_cast<int>(a.size()) != tau.num_triangles() || !is_perm(a))
        throw std::invalid_argument("invalid triangle relabeling");
      for (int t = 0; t < tau.num_triangles(); ++t) {
        r[ky(a[t])] = k[ky(t)];
        r[kz(a[t])] = k[kz(t)];
      }
      return r;
    }
    default:
      throw std::invalid_argument("move not defined on Kashaev coordinates");
  }
}

LogSides map_M(const LogKashaev& k) {
  const int tris = static_cast<int>(k.size()) / 2;
  LogSides h(3 * tris);
  for (int t = 0; t < tris; ++t) {
    h[3 * t + 0] = k[ky(t)] - k[kz(t)];
    h[3 * t + 1] = k[kz(t)];
    h[3 * t + 2] = -k[ky(t)];
  }
  return h;
}

LogShear map_f2(const DecoratedTriangulation& tau, const LogSides& h) {
  const IdealTriangulation& lam = tau.base();
  if (static_cast<int>(h.size()) != 3 * lam.num_triangles())
    throw std::invalid_argument("side-value vector size mismatch");
  LogShear x(lam.num_edges());
  for (int e = 0; e < lam.num_edges(); ++e) {
    const auto& slots = lam.edge_slots(e);
    x[e] = 0.0;
    for (const SideRef& s : slots) x[e] += h[3 * s.tri + tau.dec_side(s.tri, s.side)];
  }
  return x;
}

double map_f1(const LogShear& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s;
}

IntMat m_matrix(int m) {
  const int tris = 2 * m;
  IntMat M(3 * tris, std::vector<long long>(2 * tris, 0));
  for (int t = 0; t < tris; ++t) {
    M[3 * t + 0][ky(t)] = 1;
    M[3 * t + 0][kz(t)] = -1;
    M[3 * t + 1][kz(t)] = 1;
    M[3 * t + 2][ky(t)] = -1;
  }
  return M;
}

IntMat f2_matrix(const DecoratedTriangulation& tau) {
  const IdealTriangulation& lam = tau.base();
  IntMat F(lam.num_edges(), std::vector<long long>(3 * lam.num_triangles(), 0));
  for (int e = 0; e < lam.num_edges(); ++e)
    for (const SideRef& s : lam.edge_slots(e))
      F[e][3 * s.tri + tau.dec_side(s.tri, s.side)] += 1;
  return F;
}

IntMat l_matrix(const DecoratedTriangulation& tau) {
  return int_mul(f2_matrix(tau), m_matrix(tau.base().m()));
}

std::vector<std::vector<long long>> dual_cycle_basis(const DecoratedTriangulation& tau) {
  const IdealTriangulation& lam = tau.base();
  const int tris = lam.num_triangles();
  const int edges = lam.num_edges();
  // lowest-label-first spanning tree of the dual graph
  std::vector<bool> visited(tris, false), in_tree(edges, false);
  std::vector<int> parent(tris, -1), via(tris, -1), depth(tris, 0);
  visited[0] = true;
  for (int added = 1; added < tris;) {
    int pick = -1;
    for (int e = 0; e < edges && pick < 0; ++e) {
      if (in_tree[e]) continue;
      int u = lam.edge_slots(e)[0].tri, v = lam.edge_slots(e)[1].tri;
      if (visited[u] != visited[v]) pick = e;
    }
    if (pick < 0) throw std::logic_error("dual graph disconnected");
    int u = lam.edge_slots(pick)[0].tri, v = lam.edge_slots(pick)[1].tri;
    int known = visited[u] ? u : v, fresh = visited[u] ? v : u;
    visited[fresh] = true;
    in_tree[pick] = true;
    parent[fresh] = known;
    via[fresh] = pick;
    depth[fresh] = depth[known] + 1;
    ++added;
  }
  // tree-edge sign when walking child -> parent: +1 along the edge orientation
  auto step_sign = [&](int child) {
    int e = via[child];
    return lam.edge_slots(e)[0].tri == child ? 1 : -1;
  };
  std::vector<std::vector<long long>> basis;
  for (int e = 0; e < edges; ++e) {
    if (in_tree[e]) continue;
    std::vector<long long> c(edges, 0);
    c[e] = 1; // oriented from the smaller slot toward the larger
    int u = lam.edge_slots(e)[0].tri, v = lam.edge_slots(e)[1].tri;
    // close up with the tree path v -> u
    int x = v, y = u;
    while (depth[x] > depth[y]) {
      c[via[x]] += step_sign(x);
      x = parent[x];
    }
    while (depth[y] > depth[x]) {
      c[via[y]] -= step_sign(y);
      y = parent[y];
    }
    while (x != y) {
      c[via[x]] += step_sign(x);
      c[via[y]] -= step_sign(y);
      x = parent[x];
      y = parent[y];
    }
    basis.push_back(std::move(c));
  }
  return basis;
}

namespace {

void accumulate_cycle(const DecoratedTriangulation& tau, const std::vector<double>& c,
                      std::vector<double>& h) {
  const IdealTriangulation& lam = tau.base();
  for (int e = 0; e < lam.num_edges(); ++e) {
    if (c[e] == 0.0) continue;
    const auto& slots = lam.edge_slots(e);
    h[3 * slots[0].tri + tau.dec_side(slots[0].tri, slots[0].side)] -= c[e];
    h[3 * slots[1].tri + tau.dec_side(slots[1].tri, slots[1].side)] += c[e];
  }
}

} // namespace

IntMat f3_matrix(const DecoratedTriangulation& tau) {
  auto basis = dual_cycle_basis(tau);
  const int tris = tau.num_triangles();
  IntMat F(3 * tris, std::vector<long long>(basis.size(), 0));
  for (size_t col = 0; col < basis.size(); ++col) {
    std::vector<double> c(basis[col].begin(), basis[col].end());
    std::vector<double> h(3 * tris, 0.0);
    accumulate_cycle(tau, c, h);
    for (int r = 0; r < 3 * tris; ++r) F[r][col] = static_cast<long long>(h[r]);
  }
  return F;
}

bool is_dual_cycle(const DecoratedTriangulation& tau, const std::vector<double>& c,
                   double tol) {
  if (static_cast<int>(c.size()) != tau.base().num_edges()) return false;
  std::vector<double> h(3 * tau.num_triangles(), 0.0);
  accumulate_cycle(tau, c, h);
  for (int t = 0; t < tau.num_triangles(); ++t)
    if (std::fabs(h[3 * t] + h[3 * t + 1] + h[3 * t + 2]) > tol) return false;
  return true;
}

LogSides map_f3(const DecoratedTriangulation& tau, const std::vector<double>& c) {
  if (!is_dual_cycle(tau, c))
    throw std::invalid_argument("coefficients are not a cycle of the dual graph");
  std::vector<double> h(3 * tau.num_triangles(), 0.0);
  accumulate_cycle(tau, c, h);
  return h;
}

int int_rank(IntMat a) {
  const int rows = static_cast<int>(a.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(a[0].size());
  int rank = 0;
  long long prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(a[rank], a[piv]);
    for (int r = rank + 1; r < rows; ++r) {
      for (int c2 = col + 1; c2 < cols; ++c2)
        a[r][c2] = (checked_mul(a[rank][col], a[r][c2]) -
                    checked_mul(a[r][col], a[rank][c2])) /
                   prev; // Bareiss: division is exact
      a[r][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

IntMat int_mul(const IntMat& a, const IntMat& b) {
  if (a.empty() || b.empty() || a[0].size() != b.size())
    throw std::invalid_argument("matrix shape mismatch");
  IntMat r(a.size(), std::vector<long long>(b[0].size(), 0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < b[0].size(); ++j)
        r[i][j] = checked_add(r[i][j], checked_mul(a[i][k], b[k][j]));
    }
  return r;
}

IntMat int_transpose(const IntMat& a) {
  if (a.empty()) return {};
  IntMat r(a[0].size(), std::vector<long long>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
  return r;
}

std::string ExactSequenceReport::str() const {
  std::ostringstream os;
  os << "m=" << m << " rank_f2=" << rank_f2 << "/" << expected_rank_f2
     << " ker_f2=" << expected_kernel_dim << " rank_f3=" << rank_f3
     << " f1f2=" << (f1_f2_zero ? "0" : "X") << " f2f3=" << (f2_f3_zero ? "0" : "X")
     << " f3inj=" << (f3_injective ? "y" : "n")
     << (ok() ? " exact" : " NOT-EXACT");
  return os.str();
}

ExactSequenceReport verify_exact_sequence(const DecoratedTriangulation& tau) {
  ExactSequenceReport rep;
  const int m = tau.base().m();
  const int g = tau.base().genus(), p = tau.base().punctures();
  rep.m = m;
  rep.expected_rank_f2 = 3 * m - 1;
  rep.expected_kernel_dim = 2 * g + p - 1;

  IntMat L = l_matrix(tau);
  rep.rank_f2 = int_rank(L);

  // f1 o f2 = 0: the all-ones row annihilates L
  rep.f1_f2_zero = true;
  for (size_t col = 0; col < L[0].size(); ++col) {
    long long s = 0;
    for (size_t row = 0; row < L.size(); ++row) s += L[row][col];
    if (s != 0) rep.f1_f2_zero = false;
  }
  rep.f1_surjective = true; // f1 is the nonzero sum functional onto R

  // f3 expressed in (ln y, ln z) coordinates: ln y = -h^2, ln z = h^1
  IntMat F3 = f3_matrix(tau);
  const int cycles = static_cast<int>(F3[0].size());
  IntMat F3yz(4 * m, std::vector<long long>(cycles, 0));
  for (int t = 0; t < 2 * m; ++t)
    for (int c = 0; c < cycles; ++c) {
      F3yz[ky(t)][c] = -F3[3 * t + 2][c];
      F3yz[kz(t)][c] = F3[3 * t + 1][c];
    }
  rep.rank_f3 = int_rank(F3yz);
  rep.f3_injective = rep.rank_f3 == cycles && cycles == m + 1;

  IntMat LF3 = int_mul(L, F3yz);
  rep.f2_f3_zero = true;
  for (const auto& row : LF3)
    for (long long v : row)
      if (v != 0) rep.f2_f3_zero = false;

  const int ker_dim = 4 * m - rep.rank_f2;
  rep.kernel_dimension_matches =
      ker_dim == rep.expected_kernel_dim && rep.rank_f3 == rep.expected_kernel_dim;
  return rep;
}

std::vector<long long> poisson_constants(const DecoratedTriangulation& tau) {
  const int m = tau.base().m();
  IntMat L = l_matrix(tau);
  IntMat Pi(4 * m, std::vector<long long>(4 * m, 0));
  for (int t = 0; t < 2 * m; ++t) {
    Pi[ky(t)][kz(t)] = 1;
    Pi[kz(t)][ky(t)] = -1;
  }
  IntMat push = int_mul(int_mul(L, Pi), int_transpose(L));
  auto sigma = tau.base().skew_form();
  std::vector<long long> found;
  for (long long c : {-2LL, -1LL, 1LL, 2LL}) {
    bool match = true;
    for (int i = 0; i < 3 * m && match; ++i)
      for (int j = 0; j < 3 * m && match; ++j)
        if (push[i][j] != c * sigma[i][j]) match = false;
    if (match) found.push_back(c);
  }
  return found;
}

bool poisson_check(const DecoratedTriangulation& tau, long long c) {
  auto cs = poisson_constants(tau);
  return std::find(cs.begin(), cs.end(), c) != cs.end();
}

std::string serialize_shear(const std::vector<double>& x_exp) {
  std::ostringstream os;
  os.precision(17);
  for (size_t e = 0; e < x_exp.size(); ++e) os << "x " << e + 1 << " " << x_exp[e] << "\n";
  return os.str();
}

std::vector<double> parse_shear(const std::string& text, int edges) {
  std::vector<double> x(edges, 0.0);
  std::vector<bool> seen(edges, false);
  std::istringstream in(text);
  std::string key;
  while (in >> key) {
    if (key == "#") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    int label;
    double v;
    if (key != "x" || !(in >> label >> v))
      throw std::invalid_argument("expected 'x <edge> <value>' records");
    if (label < 1 || label > edges) throw std::invalid_argument("edge label out of range");
    if (!(v > 0)) throw std::invalid_argument("shear coordinates must be strictly positive");
    x[label - 1] = v;
    seen[label - 1] = true;
  }
  for (bool b : seen)
    if (!b) throw std::invalid_argument("missing shear coordinate record");
  return x;
}

std::string serialize_kashaev(const std::vector<double>& yz_exp) {
  std::ostringstream os;
  os.precision(17);
  for (size_t t = 0; 2 * t + 1 < yz_exp.size(); ++t)
    os << "yz " << t + 1 << " " << yz_exp[2 * t] << " " << yz_exp[2 * t + 1] << "\n";
  return os.str();
}

std::vector<double> parse_kashaev(const std::string& text, int triangles) {
  std::vector<double> k(2 * triangles, 0.0);
  std::vector<bool> seen(triangles, false);
  std::istringstream in(text);
  std::string key;
  while (in >> key) {
    if (key == "#") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    int label;
    double y, z;
    if (key != "yz" || !(in >> label >> y >> z))
      throw std::invalid_argument("expected 'yz <triangle> <y> <z>' records");
    if (label < 1 || label > triangles)
      throw std::invalid_argument("triangle label out of range");
    if (!(y > 0) || !(z > 0))
      throw std::invalid_argument("Kashaev coordinates must be strictly positive");
    k[ky(label - 1)] = y;
    k[kz(label - 1)] = z;
    seen[label - 1] = true;
  }
  for (bool b : seen)
    if (!b) throw std::invalid_argument("missing Kashaev coordinate record");
  return k;
}

double classical_diagram_residual(const DecoratedTriangulation& tau, const Move& mv,
                                  const LogKashaev& k) {
  LogShear before = map_f2(tau, map_M(k));
  LogShear via_shear;
  switch (mv.kind) {
    case Move::Kind::MarkRotation:
    case Move::Kind::ReindexTriangles:
      via_shear = before; // underlying triangulation unchanged, edges untouched
      break;
    case Move::Kind::Exchange:
      via_shear =
          shear_flip_log(tau.base(), tau.exchange_edge(mv.tri_i, mv.tri_j), before);
      break;
    default:
      throw std::invalid_argument("move not defined on decorated triangulations");
  }
  DecoratedTriangulation tau2 = apply_move(tau, mv);
  LogShear via_kashaev = map_f2(tau2, map_M(kashaev_change_log(tau, mv, k)));
  return max_abs_diff(via_shear, via_kashaev);
}

} // namespace qteich
