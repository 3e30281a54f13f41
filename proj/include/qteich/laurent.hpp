#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>

namespace qteich {

/// Integer Laurent polynomial in the formal quantization parameter q.
///
/// All identity checks in this library reduce to exact comparisons of these
/// coefficients, so arithmetic is integer and overflow-checked rather than
/// floating point. Specialization (q = 1, q = root of unity) happens only at
/// evaluation time.
class LaurentPoly {
public:
  LaurentPoly() = default; // zero
  LaurentPoly(long long constant);

  static LaurentPoly q_power(int k);              // q^k
  static LaurentPoly term(long long c, int k);    // c * q^k

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;

  /// If this polynomial is a single term with coefficient +1 or -1,
  /// returns {coefficient, exponent}.
  std::optional<std::pair<int, int>> as_unit_monomial() const;

  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  /// Multiply by q^k (shift every exponent).
  LaurentPoly shifted(int k) const;

  std::complex<double> eval(std::complex<double> q) const;
  double eval_at_one() const; // sum of coefficients

  const std::map<int, long long>& terms() const { return terms_; }

  /// Human/golden-test form, e.g. "q^-2 + 2 - q^3". Zero prints as "0".
  std::string str() const;

private:
  std::map<int, long long> terms_; // exponent -> coefficient, no zeros stored
  void trim();
};

// Overflow-checked 64-bit helpers; throw std::overflow_error.
long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);

} // namespace qteich
