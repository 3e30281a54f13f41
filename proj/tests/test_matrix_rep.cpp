#include "qteich/matrix_rep.hpp"
#include "qteich/surface_io.hpp"

#include <doctest.h>

#include <random>

using namespace qteich;

namespace {
double dense_relation_residual(const ClockShiftRep& rep) {
  const std::complex<double> q = root_of_unity_q(rep.N);
  double worst = 0.0;
  const int n = rep.sig->size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CMatrix mi = to_dense(rep.gens[i]), mj = to_dense(rep.gens[j]);
      CMatrix diff = mi * mj - std::pow(q, 2 * rep.sig->eps[i][j]) * mj * mi;
      worst = std::max(worst, diff.norm());
    }
  return worst;
}
} // namespace

TEST_CASE("clock/shift pair at N=3") {
  SigPtr sig = make_signature({{0, 1}, {-1, 0}});
  ClockShiftRep rep = tensor_rep(sig, 3);
  CHECK(rep.dimension() == 9);
  CHECK(rep_relation_residual(rep) == 0.0);       // exact phase arithmetic
  CHECK(dense_relation_residual(rep) < 1e-12);    // and the dense matrices agree
  for (const auto& g : rep.gens) {
    CMatrix m = to_dense(g);
    CMatrix prod = m * to_dense(g.inverse());
    CHECK((prod - CMatrix::Identity(9, 9)).norm() < 1e-12);
  }
}

TEST_CASE("commuting pair gives commuting matrices") {
  SigPtr sig = make_signature({{0, 0}, {0, 0}});
  ClockShiftRep rep = tensor_rep(sig, 3);
  CMatrix a = to_dense(rep.gens[0]), b = to_dense(rep.gens[1]);
  CHECK((a * b - b * a).norm() < 1e-12);
}

TEST_CASE("full edge-algebra representation of the once-punctured torus") {
  const auto& tau = builtin_surface("once-punctured-torus");
  SigPtr sig = edge_algebra_signature(tau.base().skew_form());
  ClockShiftRep rep = tensor_rep(sig, 3);
  CHECK(rep.dimension() == 27);
  CHECK(rep_relation_residual(rep) == 0.0);
  CHECK(dense_relation_residual(rep) < 1e-12);
}

TEST_CASE("reduced representation matches the relations at N in {3,5}") {
  const auto& tau = builtin_surface("four-punctured-sphere");
  SigPtr cf = edge_algebra_signature(tau.base().skew_form());
  SigPtr ka = triangle_algebra_signature(tau.num_triangles());
  for (int N : {3, 5}) {
    for (const SigPtr& sig : {cf, ka}) {
      ClockShiftRep rep = reduced_rep(sig, N);
      CHECK(rep_relation_residual(rep) == 0.0);
      CHECK(rep.dimension() < 1000); // compact enough to densify
      CHECK(dense_relation_residual(rep) < 1e-12);
    }
  }
}

TEST_CASE("monomial operator distance is exact") {
  SigPtr sig = make_signature({{0, 1}, {-1, 0}});
  ClockShiftRep rep = tensor_rep(sig, 5);
  MonomialOp a = rep.gens[0] * rep.gens[1];
  CHECK(monomial_op_distance(a, a) == 0.0);
  CHECK(monomial_op_distance(a, a.q_scaled(1)) > 0.1);
  // against the dense ground truth
  MonomialOp b = (rep.gens[1] * rep.gens[0]).q_scaled(2);
  CHECK(monomial_op_distance(a, b) ==
        doctest::Approx((to_dense(a) - to_dense(b)).operatorNorm()).epsilon(1e-10));
}

TEST_CASE("element evaluation is multiplicative") {
  SigPtr sig = triangle_algebra_signature(1);
  ClockShiftRep rep = tensor_rep(sig, 3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> expo(-2, 2), coef(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    auto rand_elem = [&]() {
      QTorusElement e(sig);
      for (int t = 0; t < 2; ++t) {
        std::vector<int> exps{expo(rng), expo(rng)};
        e = e + QTorusElement::monomial(sig, exps, LaurentPoly(coef(rng)));
      }
      return e;
    };
    QTorusElement a = rand_elem(), b = rand_elem();
    CMatrix lhs = eval_element_dense(a * b, rep);
    CMatrix rhs = eval_element_dense(a, rep) * eval_element_dense(b, rep);
    CHECK((lhs - rhs).norm() <= 1e-10 * std::max(1.0, rhs.norm()));
  }
  // unit element evaluates to the identity
  CMatrix unit = eval_element_dense(QTorusElement::scalar(sig, LaurentPoly(1)), rep);
  CHECK((unit - CMatrix::Identity(9, 9)).norm() < 1e-12);
  // normal ordering consistency: eval(X2 X1) = q^{-2} eval(X1 X2) as matrices
  SigPtr sig2 = make_signature({{0, 1}, {-1, 0}});
  ClockShiftRep rep2 = tensor_rep(sig2, 3);
  QTorusElement x1 = QTorusElement::generator(sig2, 0), x2 = QTorusElement::generator(sig2, 1);
  CMatrix lhs = eval_element_dense(x2 * x1, rep2);
  CMatrix rhs = to_dense(rep2.gens[1]) * to_dense(rep2.gens[0]);
  CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("levels must be odd and the reduced level prime") {
  SigPtr sig = make_signature({{0, 1}, {-1, 0}});
  CHECK_THROWS(tensor_rep(sig, 4));
  CHECK_THROWS(tensor_rep(sig, 1));
  CHECK_THROWS(reduced_rep(sig, 9));
  CHECK_NOTHROW(reduced_rep(sig, 7));
}
