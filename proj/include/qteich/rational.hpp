#pragma once

#include "qteich/matrix_rep.hpp"
#include "qteich/qtorus.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qteich {

class ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// Node of a noncommutative rational expression over a quantum torus.
/// Product order is significant; subtrees are shared; values are immutable.
class ExprNode {
public:
  enum class Kind { Generator, Scalar, Sum, Product, Inverse };
  Kind kind = Kind::Scalar;
  SigPtr sig;
  int gen = -1;              // Generator
  LaurentPoly coeff;         // Scalar
  std::vector<ExprPtr> kids; // Sum, Product (ordered), Inverse (one child)
};

namespace expr {
ExprPtr generator(SigPtr sig, int i);
ExprPtr scalar(SigPtr sig, LaurentPoly c);
ExprPtr one(SigPtr sig);
ExprPtr sum(std::vector<ExprPtr> kids);
ExprPtr product(std::vector<ExprPtr> kids);
ExprPtr inverse(ExprPtr e);
/// Expression form of a normal-ordered element (sum of monomial products).
ExprPtr from_element(const QTorusElement& e);
/// Fully parenthesized text with explicit q-powers. Grammar:
///   expr    := name | "[" qpoly "]" | "(" expr (" + " expr)+ ")"
///            | "(" expr (" " expr)+ ")" | expr "^-1"
/// where name is a generator name and qpoly an integer Laurent polynomial
/// in q as printed by LaurentPoly::str().
std::string str(const ExprPtr& e);
} // namespace expr

/// Per-generator images over the target algebra.
using Substitution = std::vector<ExprPtr>;

/// Homomorphic substitution: sums to sums, ordered products to ordered
/// products, inverses to inverses. No simplification. Shared subtrees map to
/// shared results, so composed coordinate changes stay polynomially sized.
ExprPtr substitute(const ExprPtr& e, const Substitution& images);

struct SingularEval : std::runtime_error {
  explicit SingularEval(const std::string& what) : std::runtime_error(what) {}
};

/// Exact normalization into the quantum torus. Succeeds iff every Inverse
/// node closes over a single unit monomial; never wrong when it answers.
std::optional<QTorusElement> to_element(const ExprPtr& e);

/// q = 1 evaluation at positive generator values; throws SingularEval on a
/// vanishing denominator.
double eval_q1(const ExprPtr& e, const std::vector<double>& point);

/// Dense root-of-unity context: generator images under the reduced
/// clock/shift representation at level N, scaled by seeded random positive
/// weights. The weights keep denominators like (1 + q X) away from the
/// root-of-unity spectrum, where the unweighted representation is singular.
struct DenseContext {
  SigPtr sig;
  int N = 3;
  std::complex<double> q;
  long long dim = 1;
  std::vector<CMatrix> gens;
};
DenseContext make_dense_context(SigPtr sig, int N, unsigned long long seed = 0,
                                long long max_dim = 2048);
CMatrix eval_dense(const ExprPtr& e, const DenseContext& ctx);

struct EqualityPolicy {
  int q1_points = 8;               // random positive q=1 evaluations
  std::vector<int> rou_levels{3, 5}; // odd prime levels for matrix checks
  double tolerance = 1e-9;         // relative residual bound
  unsigned long long seed = 0;
};

struct Verdict {
  enum class Value { Equal, Unequal, Inconclusive };
  Value value = Value::Inconclusive;
  double residual = 0.0;
  std::string witness; // reproducible failing context, empty when equal

  bool equal() const { return value == Value::Equal; }
  bool unequal() const { return value == Value::Unequal; }
  std::string str() const;
};

/// Layered equality oracle: exact normal-form fast path, then random q=1
/// points, then root-of-unity matrix evaluations. EQUAL requires every
/// enabled numeric layer to pass including at least one matrix level;
/// UNEQUAL always carries a reproducible witness.
Verdict expr_equal(const ExprPtr& a, const ExprPtr& b, const EqualityPolicy& pol);

/// Batched variant sharing evaluation caches across pairs (the pairs usually
/// share almost all of their DAGs).
std::vector<Verdict> expr_equal_many(const std::vector<std::pair<ExprPtr, ExprPtr>>& pairs,
                                     const EqualityPolicy& pol);

} // namespace qteich
