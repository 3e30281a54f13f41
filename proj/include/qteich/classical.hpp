#pragma once

#include "qteich/surface.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qteich {

// Classical coordinates are kept in log form so the structure maps are honest
// linear maps and flips cannot overflow; exponential form is for I/O.
using LogShear = std::vector<double>;   // 3m entries, ln x_e
using LogKashaev = std::vector<double>; // 4m entries, (ln y_t, ln z_t) per triangle
using LogSides = std::vector<double>;   // 6m entries, (ln h_t^0, ln h_t^1, ln h_t^2)

using IntMat = std::vector<std::vector<long long>>;

inline int ky(int tri) { return 2 * tri; }
inline int kz(int tri) { return 2 * tri + 1; }

/// ln(1 + e^u), overflow-safe.
double softplus(double u);
/// ln(e^a + e^b), overflow-safe.
double log_add_exp(double a, double b);

/// Diagonal exchange on exponential shear coordinates, log domain. The new
/// diagonal keeps the label: x'_e = 1/x_e exactly, and the surrounding edges
/// transform by the identification pattern of the square.
LogShear shear_flip_log(const IdealTriangulation& lam, int edge, const LogShear& x);
/// Convenience wrapper on exponential coordinates (all entries positive).
std::vector<double> shear_flip_exp(const IdealTriangulation& lam, int edge,
                                   const std::vector<double>& x);

/// Coordinate change on (log) Kashaev coordinates for an elementary move.
LogKashaev kashaev_change_log(const DecoratedTriangulation& tau, const Move& mv,
                              const LogKashaev& k);

/// Per-triangle side values: (h^0, h^1, h^2) = (ln y - ln z, ln z, -ln y).
LogSides map_M(const LogKashaev& k);
/// ln x_e = ln h^s + ln h^t over the two sides the edge bounds.
LogShear map_f2(const DecoratedTriangulation& tau, const LogSides& h);
/// Sum of log shear coordinates.
double map_f1(const LogShear& x);

IntMat m_matrix(int m);                               // 6m x 4m
IntMat f2_matrix(const DecoratedTriangulation& tau);  // 3m x 6m
IntMat l_matrix(const DecoratedTriangulation& tau);   // f2 * M, 3m x 4m

/// Basis of the dual-graph cycle space (one column per fundamental cycle of a
/// deterministic lowest-label-first spanning tree; loops are their own
/// cycles). Dual edges are oriented from the lexicographically smaller
/// (triangle, side) slot. Size m+1 = 2g+p-1.
std::vector<std::vector<long long>> dual_cycle_basis(const DecoratedTriangulation& tau);
IntMat f3_matrix(const DecoratedTriangulation& tau); // 6m x (m+1)

bool is_dual_cycle(const DecoratedTriangulation& tau, const std::vector<double>& c,
                   double tol = 1e-9);
/// Side values of a dual cycle; throws if c is not a cycle.
LogSides map_f3(const DecoratedTriangulation& tau, const std::vector<double>& c);

// Exact integer linear algebra (fraction-free elimination).
int int_rank(IntMat a);
IntMat int_mul(const IntMat& a, const IntMat& b);
IntMat int_transpose(const IntMat& a);

struct ExactSequenceReport {
  int m = 0;
  bool f1_surjective = false;
  bool f1_f2_zero = false;
  bool f2_f3_zero = false;
  bool f3_injective = false;
  bool kernel_dimension_matches = false;
  int rank_f2 = 0, rank_f3 = 0;
  int expected_rank_f2 = 0, expected_kernel_dim = 0;
  bool ok() const {
    return f1_surjective && f1_f2_zero && f2_f3_zero && f3_injective &&
           kernel_dimension_matches && rank_f2 == expected_rank_f2;
  }
  std::string str() const;
};
/// Exactness of 0 -> H_1 -> K_tau -> T_lambda -> R -> 0 by exact ranks.
ExactSequenceReport verify_exact_sequence(const DecoratedTriangulation& tau);

/// All constants c in {-2,-1,1,2} with L Pi L^T = c sigma exactly (Pi the
/// per-triangle block [[0,1],[-1,0]] on (ln y, ln z)). Unique when sigma != 0.
std::vector<long long> poisson_constants(const DecoratedTriangulation& tau);
bool poisson_check(const DecoratedTriangulation& tau, long long c);

/// Commutativity residual of the coordinate-change square: shear change after
/// f2 o M versus f2 o M after the Kashaev change. Max absolute difference of
/// log coordinates (= relative error of exponential coordinates).
double classical_diagram_residual(const DecoratedTriangulation& tau, const Move& mv,
                                  const LogKashaev& k);

double rel_err(double a, double b);
double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b);

// Plain-text records for coordinate vectors in exponential form, keyed by
// 1-based labels: "x <edge> <value>" per shear entry, "yz <triangle> <y> <z>"
// per Kashaev pair. Non-positive entries are rejected at parse time.
std::string serialize_shear(const std::vector<double>& x_exp);
std::vector<double> parse_shear(const std::string& text, int edges);
std::string serialize_kashaev(const std::vector<double>& yz_exp);
std::vector<double> parse_kashaev(const std::string& text, int triangles);

} // namespace qteich
