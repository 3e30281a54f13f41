#include "qteich/qtorus.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qteich {

SigPtr make_signature(std::vector<std::vector<int>> eps, std::vector<std::string> names) {
  const int n = static_cast<int>(eps.size());
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(eps[i].size()) != n)
      throw std::invalid_argument("signature matrix is not square");
    for (int j = 0; j < n; ++j)
      if (eps[i][j] + eps[j][i] != 0)
        throw std::invalid_argument("signature matrix is not antisymmetric");
  }
  if (names.empty()) {
    names.reserve(n);
    for (int i = 0; i < n; ++i) names.push_back("g" + std::to_string(i + 1));
  }
  if (static_cast<int>(names.size()) != n)
    throw std::invalid_argument("signature name count mismatch");
  auto s = std::make_shared<AlgebraSignature>();
  s->eps = std::move(eps);
  s->names = std::move(names);
  return s;
}

SigPtr edge_algebra_signature(const std::vector<std::vector<int>>& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 0; i < n; ++i) names.push_back("X" + std::to_string(i + 1));
  return make_signature(sigma, std::move(names));
}

SigPtr triangle_algebra_signature(int triangles) {
  const int n = 2 * triangles;
  std::vector<std::vector<int>> eps(n, std::vector<int>(n, 0));
  std::vector<std::string> names(n);
  for (int t = 0; t < triangles; ++t) {
    // Z_t Y_t = q^2 Y_t Z_t
    eps[gen_Z(t)][gen_Y(t)] = 1;
    eps[gen_Y(t)][gen_Z(t)] = -1;
    names[gen_Y(t)] = "Y" + std::to_string(t + 1);
    names[gen_Z(t)] = "Z" + std::to_string(t + 1);
  }
  return make_signature(std::move(eps), std::move(names));
}

int reorder_q_power(const AlgebraSignature& sig, const std::vector<int>& a,
                    const std::vector<int>& b) {
  const int n = sig.size();
  long long w = 0;
  for (int i = 1; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < i; ++j)
      w += static_cast<long long>(a[i]) * b[j] * sig.eps[i][j];
  }
  w *= 2;
  if (w > 1000000 || w < -1000000) throw std::overflow_error("q-power out of range");
  return static_cast<int>(w);
}

int reorder_q_power_bruteforce(const AlgebraSignature& sig, const std::vector<int>& a,
                               const std::vector<int>& b) {
  // Expand both monomials into a word of single +-1 letters, then bubble-sort
  // into ascending generator order, accumulating q^{2 e1 e2 eps} per adjacent
  // transposition.
  struct Letter {
    int gen;
    int exp; // +1 or -1
  };
  std::vector<Letter> word;
  auto push = [&word](const std::vector<int>& e) {
    for (int g = 0; g < static_cast<int>(e.size()); ++g)
      for (int r = 0; r < std::abs(e[g]); ++r) word.push_back({g, e[g] > 0 ? 1 : -1});
  };
  push(a);
  push(b);
  int w = 0;
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t p = 0; p + 1 < word.size(); ++p) {
      if (word[p].gen > word[p + 1].gen) {
        // G_i^{e} G_j^{f} -> q^{2 e f eps_ij} G_j^{f} G_i^{e} with i > j
        w += 2 * word[p].exp * word[p + 1].exp * sig.eps[word[p].gen][word[p + 1].gen];
        std::swap(word[p], word[p + 1]);
        moved = true;
      }
    }
  }
  return w;
}

MonomialProduct monomial_mul(const AlgebraSignature& sig, const std::vector<int>& a,
                             const std::vector<int>& b) {
  MonomialProduct r;
  r.q_power = reorder_q_power(sig, a, b);
  r.exponents.resize(a.size());
  for (size_t i = 0; i < a.size(); ++i) r.exponents[i] = a[i] + b[i];
  return r;
}

std::array<QTorusElement, 3> side_elements(const SigPtr& triangle_sig, int tri) {
  auto mono = [&](const std::vector<int>& exps) {
    return QTorusElement::monomial(triangle_sig, exps, LaurentPoly(1));
  };
  std::vector<int> h0(triangle_sig->size(), 0), h1(triangle_sig->size(), 0), h2(triangle_sig->size(), 0);
  h0[gen_Y(tri)] = 1;
  h0[gen_Z(tri)] = -1;
  h1[gen_Z(tri)] = 1;
  h2[gen_Y(tri)] = -1;
  return {mono(h0), mono(h1), mono(h2)};
}

int side_form(int s, int t) {
  if (s == t) return 0;
  return t == (s + 2) % 3 ? 1 : -1;
}

QTorusElement QTorusElement::scalar(SigPtr sig, const LaurentPoly& c) {
  QTorusElement e(std::move(sig));
  e.add_term(std::vector<int>(e.sig_->size(), 0), c);
  return e;
}

QTorusElement QTorusElement::generator(SigPtr sig, int i, int power) {
  if (i < 0 || i >= sig->size()) throw std::invalid_argument("generator index out of range");
  QTorusElement e(std::move(sig));
  std::vector<int> exps(e.sig_->size(), 0);
  exps[i] = power;
  e.add_term(exps, LaurentPoly(1));
  return e;
}

QTorusElement QTorusElement::monomial(SigPtr sig, const std::vector<int>& exps,
                                      const LaurentPoly& coeff) {
  QTorusElement e(std::move(sig));
  if (static_cast<int>(exps.size()) != e.sig_->size())
    throw std::invalid_argument("exponent vector size mismatch");
  e.add_term(exps, coeff);
  return e;
}

void QTorusElement::add_term(const std::vector<int>& e, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void QTorusElement::check_same_sig(const QTorusElement& o) const {
  if (!(*sig_ == *o.sig_)) throw std::invalid_argument("mixed quantum torus signatures");
}

QTorusElement QTorusElement::operator+(const QTorusElement& o) const {
  check_same_sig(o);
  QTorusElement r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

QTorusElement QTorusElement::operator-(const QTorusElement& o) const {
  check_same_sig(o);
  QTorusElement r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

QTorusElement QTorusElement::operator*(const QTorusElement& o) const {
  check_same_sig(o);
  QTorusElement r(sig_);
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      MonomialProduct p = monomial_mul(*sig_, ea, eb);
      r.add_term(p.exponents, (ca * cb).shifted(p.q_power));
    }
  return r;
}

QTorusElement QTorusElement::scaled(const LaurentPoly& c) const {
  QTorusElement r(sig_);
  for (const auto& [e, t] : terms_) r.add_term(e, t * c);
  return r;
}

bool QTorusElement::operator==(const QTorusElement& o) const {
  check_same_sig(o);
  return terms_ == o.terms_;
}

std::optional<QTorusElement> QTorusElement::inverse() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [e, c] = *terms_.begin();
  auto unit = c.as_unit_monomial();
  if (!unit) return std::nullopt;
  auto [sign, k] = *unit;
  std::vector<int> inv_e(e.size());
  for (size_t i = 0; i < e.size(); ++i) inv_e[i] = -e[i];
  // (q^k G^e)(q^{-k-w} G^{-e}) = 1 where G^e G^{-e} = q^w.
  int w = reorder_q_power(*sig_, e, inv_e);
  return QTorusElement::monomial(sig_, inv_e, LaurentPoly::term(sign, -k - w));
}

std::optional<LaurentPoly> QTorusElement::as_scalar() const {
  if (terms_.empty()) return LaurentPoly();
  if (terms_.size() != 1) return std::nullopt;
  const auto& [e, c] = *terms_.begin();
  for (int v : e)
    if (v != 0) return std::nullopt;
  return c;
}

double QTorusElement::eval_at_one(const std::vector<double>& point) const {
  if (static_cast<int>(point.size()) != sig_->size())
    throw std::invalid_argument("evaluation point size mismatch");
  double acc = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c.eval_at_one();
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) m *= std::pow(point[i], e[i]);
    acc += m;
  }
  return acc;
}

std::string QTorusElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << sig_->names[i];
      if (e[i] != 1) os << "^" << e[i];
    }
  }
  return os.str();
}

} // namespace qteich
