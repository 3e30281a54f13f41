#pragma once

#include "qteich/qtorus.hpp"

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qteich {

using CMatrix = Eigen::MatrixXcd;

/// The specialization point used at root-of-unity level N: q is the primitive
/// 2N-th root of unity exp(i*pi/N), so q^2 is a primitive N-th root.
std::complex<double> root_of_unity_q(int N);

/// Monomial operator on (C^N)^{tensor sites}, kept in factored form:
/// q^{phase} * tensor_s (S^{shift_s} C^{clock_s}) where S is the cyclic shift,
/// C = diag(1, z, z^2, ...) the clock with z = q^2. Products, inverses and
/// powers stay in this form with exact integer phase bookkeeping, so relation
/// residuals can be computed exactly even when the tensor dimension is far too
/// large to materialize.
struct MonomialOp {
  int N = 3;
  int phase = 0; // exponent of q, reduced mod 2N
  std::vector<int> shift, clock; // per-site powers, reduced mod N

  static MonomialOp identity(int N, int sites);
  MonomialOp operator*(const MonomialOp& o) const;
  MonomialOp inverse() const;
  MonomialOp pow(int k) const;
  MonomialOp q_scaled(int qpow) const;
  bool operator==(const MonomialOp& o) const;

  long long dimension() const; // N^sites; throws if it overflows
};

/// Exact operator-norm distance ||A - B||. When the permutation parts agree
/// this is max over basis states of |q^{d}| distances, computed from integer
/// phase differences; when they disagree the norm is at least sqrt(2) and that
/// lower bound is returned (sufficient for any residual threshold).
double monomial_op_distance(const MonomialOp& a, const MonomialOp& b);

/// A list of generator images forming a representation of the signature's
/// relations at level N: gens[i] gens[j] = q^{2 eps_ij} gens[j] gens[i].
struct ClockShiftRep {
  SigPtr sig;
  int N = 3;
  int sites = 0;
  std::vector<MonomialOp> gens;

  long long dimension() const;
};

/// One clock/shift pair per generator: G_i -> S_i * prod_k C_k^{c_ik} with c
/// the strict upper triangle of eps. Dimension N^n. Requires odd N >= 3.
ClockShiftRep tensor_rep(SigPtr sig, int N);

/// Compact representation obtained from a symplectic decomposition of eps mod
/// N (N an odd prime): dimension N^{rank_N(eps)/2}. Satisfies exactly the same
/// relations; used where dense matrices are needed.
ClockShiftRep reduced_rep(SigPtr sig, int N);

/// Image of a normal-ordered monomial G^e (times q^{extra_qpow}) in the rep.
MonomialOp rep_monomial(const ClockShiftRep& rep, const std::vector<int>& exps,
                        int extra_qpow = 0);

/// Largest exact relation residual max_{i,j} ||M_i M_j - q^{2 eps_ij} M_j M_i||.
double rep_relation_residual(const ClockShiftRep& rep);

/// Dense materialization; throws if dimension exceeds max_dim.
CMatrix to_dense(const MonomialOp& op, long long max_dim = 4096);

/// Dense evaluation of a quantum torus element under the representation.
CMatrix eval_element_dense(const QTorusElement& e, const ClockShiftRep& rep,
                           long long max_dim = 4096);

} // namespace qteich
