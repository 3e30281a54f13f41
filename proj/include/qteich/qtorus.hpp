#pragma once

#include "qteich/laurent.hpp"

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace qteich {

/// Presentation of a quantum torus: n invertible generators G_1..G_n with
/// relations G_i G_j = q^{2 eps_ij} G_j G_i for an antisymmetric integer
/// matrix eps. Covers both edge algebras (eps = skew form of a triangulation)
/// and triangle algebras (one (Y,Z) Weyl pair per triangle).
struct AlgebraSignature {
  std::vector<std::vector<int>> eps;
  std::vector<std::string> names; // generator display names

  int size() const { return static_cast<int>(eps.size()); }
  bool operator==(const AlgebraSignature& o) const { return eps == o.eps; }
};

using SigPtr = std::shared_ptr<const AlgebraSignature>;

/// Validates antisymmetry; names default to g1..gn.
SigPtr make_signature(std::vector<std::vector<int>> eps, std::vector<std::string> names = {});

/// Edge algebra of a triangulation: X_i X_j = q^{2 sigma_ij} X_j X_i.
SigPtr edge_algebra_signature(const std::vector<std::vector<int>>& sigma);

/// Triangle algebra on 2m generators Y_1,Z_1,...,Y_m',Z_m' with
/// Z_t Y_t = q^2 Y_t Z_t and generators of distinct triangles commuting.
SigPtr triangle_algebra_signature(int triangles);
inline int gen_Y(int tri) { return 2 * tri; }
inline int gen_Z(int tri) { return 2 * tri + 1; }

/// q-power exponent picked up when normal-ordering the product G^a * G^b,
/// i.e. G^a G^b = q^w G^{a+b}. Always even: w = 2 * sum_{i>j} a_i b_j eps_ij.
int reorder_q_power(const AlgebraSignature& sig, const std::vector<int>& a,
                    const std::vector<int>& b);

/// Same quantity computed letter by letter with a bubble sort; the
/// transposition-counting oracle used to validate reorder_q_power.
int reorder_q_power_bruteforce(const AlgebraSignature& sig, const std::vector<int>& a,
                               const std::vector<int>& b);

struct MonomialProduct {
  int q_power;
  std::vector<int> exponents;
};
MonomialProduct monomial_mul(const AlgebraSignature& sig, const std::vector<int>& a,
                             const std::vector<int>& b);

class QTorusElement;

/// Side elements of one triangle in the triangle algebra:
/// (H^0, H^1, H^2) = (Y Z^{-1}, Z, Y^{-1}). They satisfy
/// H^s H^t = q^{2 side_form(s,t)} H^t H^s and H^0 H^1 H^2 = 1.
std::array<QTorusElement, 3> side_elements(const SigPtr& triangle_sig, int tri);

/// The cyclic side form on {0,1,2}: +1 on (1,0), (0,2), (2,1).
int side_form(int s, int t);

/// Element of the quantum torus in normal form: a finitely supported sum of
/// normal-ordered monomials G_1^{e1}...G_n^{en} with LaurentPoly coefficients.
/// Normal form is unique, so operator== decides equality exactly.
class QTorusElement {
public:
  explicit QTorusElement(SigPtr sig) : sig_(std::move(sig)) {}

  static QTorusElement scalar(SigPtr sig, const LaurentPoly& c);
  static QTorusElement generator(SigPtr sig, int i, int power = 1);
  static QTorusElement monomial(SigPtr sig, const std::vector<int>& exps,
                                const LaurentPoly& coeff);

  const SigPtr& sig() const { return sig_; }
  bool is_zero() const { return terms_.empty(); }
  size_t num_terms() const { return terms_.size(); }
  const std::map<std::vector<int>, LaurentPoly>& terms() const { return terms_; }

  /// If this element is c * q^k * G^e with c = +-1, returns its exact
  /// two-sided inverse; otherwise nullopt.
  std::optional<QTorusElement> inverse() const;

  /// If the element is a scalar (possibly zero), returns the coefficient.
  std::optional<LaurentPoly> as_scalar() const;

  QTorusElement operator+(const QTorusElement& o) const;
  QTorusElement operator-(const QTorusElement& o) const;
  QTorusElement operator*(const QTorusElement& o) const;
  QTorusElement scaled(const LaurentPoly& c) const;
  bool operator==(const QTorusElement& o) const;
  bool operator!=(const QTorusElement& o) const { return !(*this == o); }

  /// Commutative specialization q = 1 at a point with positive coordinates.
  double eval_at_one(const std::vector<double>& point) const;

  /// Sorted-monomial text form used by golden tests, e.g.
  /// "(q^2)*Y1 Z1^-1 + (1)".
  std::string str() const;

private:
  SigPtr sig_;
  std::map<std::vector<int>, LaurentPoly> terms_;
  void add_term(const std::vector<int>& e, const LaurentPoly& c);
  void check_same_sig(const QTorusElement& o) const;
};

} // namespace qteich
