#include "qteich/matrix_rep.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qteich {

namespace {

int mod(int a, int m) {
  int r = a % m;
  return r < 0 ? r + m : r;
}

void require_odd_level(int N) {
  if (N < 3 || N % 2 == 0)
    throw std::invalid_argument("root-of-unity level must be odd and >= 3");
}

int inv_mod_prime(int a, int p) {
  // Fermat; p is a small prime and a != 0 mod p.
  int r = 1, base = mod(a, p), e = p - 2;
  while (e) {
    if (e & 1) r = (r * base) % p;
    base = (base * base) % p;
    e >>= 1;
  }
  return r;
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

} // namespace

std::complex<double> root_of_unity_q(int N) {
  require_odd_level(N);
  const double t = std::numbers::pi / static_cast<double>(N);
  return {std::cos(t), std::sin(t)};
}

MonomialOp MonomialOp::identity(int N, int sites) {
  MonomialOp op;
  op.N = N;
  op.shift.assign(sites, 0);
  op.clock.assign(sites, 0);
  return op;
}

MonomialOp MonomialOp::operator*(const MonomialOp& o) const {
  if (N != o.N || shift.size() != o.shift.size())
    throw std::invalid_argument("monomial operator shape mismatch");
  MonomialOp r = *this;
  // (S^a C^b)(S^a' C^b') = z^{a' b} S^{a+a'} C^{b+b'}, z = q^2
  int extra = o.phase;
  for (size_t s = 0; s < shift.size(); ++s) {
    extra = mod(extra + 2 * o.shift[s] * clock[s], 2 * N);
    r.shift[s] = mod(shift[s] + o.shift[s], N);
    r.clock[s] = mod(clock[s] + o.clock[s], N);
  }
  r.phase = mod(phase + extra, 2 * N);
  return r;
}

MonomialOp MonomialOp::inverse() const {
  MonomialOp r = *this;
  int ph = -phase;
  for (size_t s = 0; s < shift.size(); ++s) {
    // (S^a C^b)^{-1} = z^{ab} S^{-a} C^{-b}
    ph += 2 * shift[s] * clock[s];
    r.shift[s] = mod(-shift[s], N);
    r.clock[s] = mod(-clock[s], N);
  }
  r.phase = mod(ph, 2 * N);
  return r;
}

MonomialOp MonomialOp::pow(int k) const {
  MonomialOp base = k >= 0 ? *this : inverse();
  MonomialOp r = MonomialOp::identity(N, static_cast<int>(shift.size()));
  for (int i = 0; i < std::abs(k); ++i) r = r * base;
  return r;
}

MonomialOp MonomialOp::q_scaled(int qpow) const {
  MonomialOp r = *this;
  r.phase = mod(r.phase + qpow, 2 * N);
  return r;
}

bool MonomialOp::operator==(const MonomialOp& o) const {
  return N == o.N && phase == o.phase && shift == o.shift && clock == o.clock;
}

long long MonomialOp::dimension() const {
  long long d = 1;
  for (size_t s = 0; s < shift.size(); ++s) {
    if (d > (1LL << 40) / N) throw std::overflow_error("tensor dimension overflow");
    d *= N;
  }
  return d;
}

double monomial_op_distance(const MonomialOp& a, const MonomialOp& b) {
  if (a.N != b.N || a.shift.size() != b.shift.size())
    throw std::invalid_argument("monomial operator shape mismatch");
  if (a.shift != b.shift) return std::numbers::sqrt2;
  const int N = a.N;
  // Entry phases differ by q^{D(t)}, D(t) = dphase + sum_s 2 dclock_s t_s.
  // Collect the achievable values of D mod 2N site by site.
  std::set<int> reach{mod(a.phase - b.phase, 2 * N)};
  for (size_t s = 0; s < a.shift.size(); ++s) {
    int dc = mod(a.clock[s] - b.clock[s], N);
    if (dc == 0) continue;
    std::set<int> next;
    for (int t = 0; t < N; ++t)
      for (int d : reach) next.insert(mod(d + 2 * dc * t, 2 * N));
    reach = std::move(next);
  }
  double worst = 0.0;
  for (int d : reach)
    worst = std::max(worst, 2.0 * std::abs(std::sin(std::numbers::pi * d / (2.0 * N))));
  return worst;
}

long long ClockShiftRep::dimension() const {
  return gens.empty() ? 1 : gens.front().dimension();
}

ClockShiftRep tensor_rep(SigPtr sig, int N) {
  require_odd_level(N);
  const int n = sig->size();
  ClockShiftRep rep;
  rep.sig = std::move(sig);
  rep.N = N;
  rep.sites = n;
  for (int i = 0; i < n; ++i) {
    MonomialOp op = MonomialOp::identity(N, n);
    op.shift[i] = 1;
    for (int k = 0; k < n; ++k)
      if (i < k) op.clock[k] = mod(rep.sig->eps[i][k], N); // strict upper triangle
    rep.gens.push_back(op);
  }
  return rep;
}

ClockShiftRep reduced_rep(SigPtr sig, int N) {
  require_odd_level(N);
  if (!is_prime(N))
    throw std::invalid_argument("reduced representation needs a prime level");
  const int n = sig->size();
  std::vector<std::vector<int>> E(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) E[i][j] = mod(sig->eps[i][j], N);

  // Symplectic Gram reduction of E over F_N: peel off hyperbolic planes until
  // the form vanishes. Each plane contributes one clock/shift site; generator
  // i gets plane coordinates (s_i, t_i) with s_i t_j - s_j t_i = E_ij.
  std::vector<std::vector<int>> plane_s, plane_t;
  while (true) {
    int pa = -1, pb = -1;
    for (int i = 0; i < n && pa < 0; ++i)
      for (int j = 0; j < n; ++j)
        if (E[i][j] != 0) {
          pa = i;
          pb = j;
          break;
        }
    if (pa < 0) break;
    const int cinv = inv_mod_prime(E[pa][pb], N);
    std::vector<int> s(n), t(n);
    for (int i = 0; i < n; ++i) {
      s[i] = E[i][pb];
      t[i] = (E[pa][i] * cinv) % N;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        E[i][j] = mod(E[i][j] - (s[i] * t[j] - s[j] * t[i]), N);
    plane_s.push_back(std::move(s));
    plane_t.push_back(std::move(t));
  }

  ClockShiftRep rep;
  rep.N = N;
  rep.sites = static_cast<int>(plane_s.size());
  rep.sig = std::move(sig);
  for (int i = 0; i < n; ++i) {
    MonomialOp op = MonomialOp::identity(N, rep.sites);
    for (int k = 0; k < rep.sites; ++k) {
      op.shift[k] = mod(plane_t[k][i], N);
      op.clock[k] = mod(plane_s[k][i], N);
    }
    rep.gens.push_back(op);
  }
  return rep;
}

MonomialOp rep_monomial(const ClockShiftRep& rep, const std::vector<int>& exps,
                        int extra_qpow) {
  if (static_cast<int>(exps.size()) != rep.sig->size())
    throw std::invalid_argument("exponent vector size mismatch");
  MonomialOp r = MonomialOp::identity(rep.N, rep.sites);
  for (size_t i = 0; i < exps.size(); ++i)
    if (exps[i] != 0) r = r * rep.gens[i].pow(exps[i]);
  return r.q_scaled(extra_qpow);
}

double rep_relation_residual(const ClockShiftRep& rep) {
  double worst = 0.0;
  const int n = rep.sig->size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MonomialOp lhs = rep.gens[i] * rep.gens[j];
      MonomialOp rhs = (rep.gens[j] * rep.gens[i]).q_scaled(2 * rep.sig->eps[i][j]);
      worst = std::max(worst, monomial_op_distance(lhs, rhs));
    }
  return worst;
}

CMatrix to_dense(const MonomialOp& op, long long max_dim) {
  const long long dim = op.dimension();
  if (dim > max_dim) throw std::invalid_argument("tensor dimension too large to densify");
  const int N = op.N;
  const std::complex<double> q = root_of_unity_q(N);
  const int sites = static_cast<int>(op.shift.size());
  CMatrix m = CMatrix::Zero(dim, dim);
  // Column t (mixed-radix digits t_s) maps to row t+shift with phase
  // q^{phase + 2 sum clock_s t_s}.
  for (long long col = 0; col < dim; ++col) {
    long long rest = col, row = 0, stride = 1;
    int ph = op.phase;
    for (int s = sites - 1; s >= 0; --s) {
      int digit = static_cast<int>(rest % N);
      rest /= N;
      ph += 2 * op.clock[s] * digit;
      row += stride * ((digit + op.shift[s]) % N);
      stride *= N;
    }
    m(row, col) = std::pow(q, mod(ph, 2 * N));
  }
  return m;
}

CMatrix eval_element_dense(const QTorusElement& e, const ClockShiftRep& rep,
                           long long max_dim) {
  const long long dim = rep.dimension();
  if (dim > max_dim) throw std::invalid_argument("tensor dimension too large to densify");
  const std::complex<double> q = root_of_unity_q(rep.N);
  CMatrix acc = CMatrix::Zero(dim, dim);
  for (const auto& [exps, coeff] : e.terms())
    acc += coeff.eval(q) * to_dense(rep_monomial(rep, exps), max_dim);
  return acc;
}

} // namespace qteich
