#include "qteich/qtorus.hpp"

#include <doctest.h>

#include <random>

using namespace qteich;

namespace {
SigPtr pair_sig(int eps12) {
  return make_signature({{0, eps12}, {-eps12, 0}}, {"X1", "X2"});
}
} // namespace

TEST_CASE("normal ordering picks up the commutation q-power") {
  // X2 X1 = q^{-2} X1 X2 when eps12 = 1
  SigPtr sig = pair_sig(1);
  QTorusElement x1 = QTorusElement::generator(sig, 0);
  QTorusElement x2 = QTorusElement::generator(sig, 1);
  QTorusElement lhs = x2 * x1;
  CHECK(lhs == (x1 * x2).scaled(LaurentPoly::q_power(-2)));

  // Weyl pair of one triangle: Z Y = q^2 Y Z
  SigPtr kash = triangle_algebra_signature(1);
  QTorusElement y = QTorusElement::generator(kash, gen_Y(0));
  QTorusElement z = QTorusElement::generator(kash, gen_Z(0));
  CHECK(z * y == (y * z).scaled(LaurentPoly::q_power(2)));
}

TEST_CASE("monomial inverses") {
  SigPtr sig = pair_sig(1);
  QTorusElement m =
      QTorusElement::monomial(sig, {2, -1}, LaurentPoly::term(-1, 3));
  auto inv = m.inverse();
  REQUIRE(inv.has_value());
  CHECK(m * *inv == QTorusElement::scalar(sig, LaurentPoly(1)));
  CHECK(*inv * m == QTorusElement::scalar(sig, LaurentPoly(1)));

  QTorusElement sum = m + QTorusElement::scalar(sig, LaurentPoly(1));
  CHECK_FALSE(sum.inverse().has_value());
  CHECK_FALSE(QTorusElement::monomial(sig, {1, 0}, LaurentPoly(2)).inverse().has_value());
}

TEST_CASE("commutative sanity: (1+qX)(1-qX) = 1 - q^2 X^2") {
  SigPtr sig = pair_sig(0);
  QTorusElement one = QTorusElement::scalar(sig, LaurentPoly(1));
  QTorusElement qx = QTorusElement::generator(sig, 0).scaled(LaurentPoly::q_power(1));
  QTorusElement lhs = (one + qx) * (one - qx);
  QTorusElement rhs =
      one - QTorusElement::monomial(sig, {2, 0}, LaurentPoly::q_power(2));
  CHECK(lhs == rhs);
}

TEST_CASE("side elements H0,H1,H2") {
  SigPtr kash = triangle_algebra_signature(2);
  QTorusElement y = QTorusElement::generator(kash, gen_Y(0));
  QTorusElement z = QTorusElement::generator(kash, gen_Z(0));
  QTorusElement h0 = QTorusElement::monomial(kash, {1, -1, 0, 0}, LaurentPoly(1));
  QTorusElement h1 = z, h2 = QTorusElement::generator(kash, gen_Y(0), -1);

  // H1 H0 = q^2 H0 H1, via Z Y Z^{-1} = q^2 Y
  CHECK(h1 * h0 == (h0 * h1).scaled(LaurentPoly::q_power(2)));
  CHECK(h0 * h2 == (h2 * h0).scaled(LaurentPoly::q_power(2)));
  CHECK(h2 * h1 == (h1 * h2).scaled(LaurentPoly::q_power(2)));
  // H0 H1 H2 is exactly the unit, no stray q-power
  CHECK(h0 * h1 * h2 == QTorusElement::scalar(kash, LaurentPoly(1)));
  // generators of distinct triangles commute
  QTorusElement y2 = QTorusElement::generator(kash, gen_Y(1));
  CHECK(h0 * y2 == y2 * h0);
  CHECK(y.eval_at_one({2.0, 6.0, 1.0, 1.0}) == doctest::Approx(2.0));
  // q=1 value of H0 at (y,z) = (2,6) is y/z = 1/3
  CHECK(h0.eval_at_one({2.0, 6.0, 1.0, 1.0}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("reorder q-power matches the transposition-count oracle") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> expo(-3, 3), entry(-2, 2);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 4;
    std::vector<std::vector<int>> eps(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        eps[i][j] = entry(rng);
        eps[j][i] = -eps[i][j];
      }
    SigPtr sig = make_signature(eps);
    std::vector<int> a(n), b(n);
    for (int& v : a) v = expo(rng);
    for (int& v : b) v = expo(rng);
    CHECK(reorder_q_power(*sig, a, b) == reorder_q_power_bruteforce(*sig, a, b));
  }
}

TEST_CASE("ring laws on random elements") {
  SigPtr kash = triangle_algebra_signature(2);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> expo(-2, 2), coef(-2, 2), qp(-2, 2), nt(1, 3);
  auto rand_elem = [&]() {
    QTorusElement e(kash);
    for (int t = 0, n = nt(rng); t < n; ++t) {
      std::vector<int> exps(kash->size());
      for (int& v : exps) v = expo(rng);
      e = e + QTorusElement::monomial(kash, exps, LaurentPoly::term(coef(rng), qp(rng)));
    }
    return e;
  };
  for (int trial = 0; trial < 200; ++trial) {
    QTorusElement a = rand_elem(), b = rand_elem(), c = rand_elem();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("element text form is stable") {
  SigPtr kash = triangle_algebra_signature(1);
  QTorusElement e = QTorusElement::monomial(kash, {1, -1}, LaurentPoly::q_power(2)) +
                    QTorusElement::scalar(kash, LaurentPoly(1));
  CHECK(e.str() == "(1) + (q^2)*Y1*Z1^-1");
}
