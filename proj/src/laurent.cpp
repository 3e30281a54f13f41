#include "qteich/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace qteich {

long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in Laurent coefficient addition");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("integer overflow in Laurent coefficient multiplication");
  return r;
}

LaurentPoly::LaurentPoly(long long constant) {
  if (constant != 0) terms_[0] = constant;
}

LaurentPoly LaurentPoly::q_power(int k) { return term(1, k); }

LaurentPoly LaurentPoly::term(long long c, int k) {
  LaurentPoly p;
  if (c != 0) p.terms_[k] = c;
  return p;
}

bool LaurentPoly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
}

std::optional<std::pair<int, int>> LaurentPoly::as_unit_monomial() const {
  if (terms_.size() != 1) return std::nullopt;
  auto [k, c] = *terms_.begin();
  if (c != 1 && c != -1) return std::nullopt;
  return std::make_pair(static_cast<int>(c), k);
}

void LaurentPoly::trim() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = (it->second == 0) ? terms_.erase(it) : std::next(it);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [k, c] : o.terms_) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_[k] = c;
    } else {
      it->second = checked_add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [k, c] : terms_) r.terms_[k] = -c;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) {
      int k = ka + kb;
      long long add = checked_mul(ca, cb);
      auto it = r.terms_.find(k);
      if (it == r.terms_.end())
        r.terms_[k] = add;
      else
        it->second = checked_add(it->second, add);
    }
  r.trim();
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_[e + k] = c;
  return r;
}

std::complex<double> LaurentPoly::eval(std::complex<double> q) const {
  std::complex<double> v = 0.0;
  for (const auto& [k, c] : terms_) v += static_cast<double>(c) * std::pow(q, k);
  return v;
}

double LaurentPoly::eval_at_one() const {
  double v = 0.0;
  for (const auto& [k, c] : terms_) {
    (void)k;
    v += static_cast<double>(c);
  }
  return v;
}

std::string LaurentPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    long long mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1 || k == 0) os << mag;
    if (k != 0) {
      if (mag != 1) os << "*";
      os << "q";
      if (k != 1) os << "^" << k;
    }
  }
  return os.str();
}

} // namespace qteich
