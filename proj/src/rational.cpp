#include "qteich/rational.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <map>
#include <sstream>
#include <unordered_map>

namespace qteich {

namespace expr {

namespace {
ExprPtr make(ExprNode n) { return std::make_shared<const ExprNode>(std::move(n)); }

void require_kids_sig(const std::vector<ExprPtr>& kids) {
  if (kids.empty()) throw std::invalid_argument("expression node needs children");
  for (const auto& k : kids) {
    if (!k) throw std::invalid_argument("null expression child");
    if (!(*k->sig == *kids.front()->sig))
      throw std::invalid_argument("mixed signatures in expression");
  }
}
} // namespace

ExprPtr generator(SigPtr sig, int i) {
  if (i < 0 || i >= sig->size()) throw std::invalid_argument("generator index out of range");
  ExprNode n;
  n.kind = ExprNode::Kind::Generator;
  n.sig = std::move(sig);
  n.gen = i;
  return make(std::move(n));
}

ExprPtr scalar(SigPtr sig, LaurentPoly c) {
  ExprNode n;
  n.kind = ExprNode::Kind::Scalar;
  n.sig = std::move(sig);
  n.coeff = std::move(c);
  return make(std::move(n));
}

ExprPtr one(SigPtr sig) { return scalar(std::move(sig), LaurentPoly(1)); }

ExprPtr sum(std::vector<ExprPtr> kids) {
  require_kids_sig(kids);
  if (kids.size() == 1) return kids.front();
  ExprNode n;
  n.kind = ExprNode::Kind::Sum;
  n.sig = kids.front()->sig;
  n.kids = std::move(kids);
  return make(std::move(n));
}

ExprPtr product(std::vector<ExprPtr> kids) {
  require_kids_sig(kids);
  if (kids.size() == 1) return kids.front();
  ExprNode n;
  n.kind = ExprNode::Kind::Product;
  n.sig = kids.front()->sig;
  n.kids = std::move(kids);
  return make(std::move(n));
}

ExprPtr inverse(ExprPtr e) {
  if (!e) throw std::invalid_argument("null expression child");
  ExprNode n;
  n.kind = ExprNode::Kind::Inverse;
  n.sig = e->sig;
  n.kids.push_back(std::move(e));
  return make(std::move(n));
}

ExprPtr from_element(const QTorusElement& e) {
  SigPtr sig = e.sig();
  if (e.is_zero()) return scalar(sig, LaurentPoly());
  std::vector<ExprPtr> gens(sig->size());
  auto gen_node = [&](int i) {
    if (!gens[i]) gens[i] = generator(sig, i);
    return gens[i];
  };
  std::vector<ExprPtr> terms;
  for (const auto& [exps, coeff] : e.terms()) {
    std::vector<ExprPtr> factors;
    bool unit_coeff = coeff.is_one();
    if (!unit_coeff) factors.push_back(scalar(sig, coeff));
    for (int i = 0; i < sig->size(); ++i) {
      for (int r = 0; r < exps[i]; ++r) factors.push_back(gen_node(i));
      for (int r = 0; r > exps[i]; --r) factors.push_back(inverse(gen_node(i)));
    }
    if (factors.empty()) factors.push_back(one(sig));
    terms.push_back(product(std::move(factors)));
  }
  return sum(std::move(terms));
}

std::string str(const ExprPtr& e) {
  std::ostringstream os;
  std::function<void(const ExprPtr&)> walk = [&](const ExprPtr& n) {
    switch (n->kind) {
      case ExprNode::Kind::Generator:
        os << n->sig->names[n->gen];
        break;
      case ExprNode::Kind::Scalar:
        os << "[" << n->coeff.str() << "]";
        break;
      case ExprNode::Kind::Sum:
        os << "(";
        for (size_t i = 0; i < n->kids.size(); ++i) {
          if (i) os << " + ";
          walk(n->kids[i]);
        }
        os << ")";
        break;
      case ExprNode::Kind::Product:
        os << "(";
        for (size_t i = 0; i < n->kids.size(); ++i) {
          if (i) os << " ";
          walk(n->kids[i]);
        }
        os << ")";
        break;
      case ExprNode::Kind::Inverse:
        walk(n->kids.front());
        os << "^-1";
        break;
    }
  };
  walk(e);
  return os.str();
}

} // namespace expr

ExprPtr substitute(const ExprPtr& e, const Substitution& images) {
  if (!e) throw std::invalid_argument("null expression");
  if (static_cast<int>(images.size()) != e->sig->size())
    throw std::invalid_argument("substitution must cover every generator");
  for (const auto& im : images)
    if (!im) throw std::invalid_argument("substitution has a missing generator image");
  SigPtr target = images.front()->sig;

  std::unordered_map<const ExprNode*, ExprPtr> memo;
  std::function<ExprPtr(const ExprPtr&)> walk = [&](const ExprPtr& n) -> ExprPtr {
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    ExprPtr out;
    switch (n->kind) {
      case ExprNode::Kind::Generator:
        out = images[n->gen];
        break;
      case ExprNode::Kind::Scalar:
        out = expr::scalar(target, n->coeff);
        break;
      case ExprNode::Kind::Inverse:
        out = expr::inverse(walk(n->kids.front()));
        break;
      case ExprNode::Kind::Sum:
      case ExprNode::Kind::Product: {
        std::vector<ExprPtr> kids;
        kids.reserve(n->kids.size());
        for (const auto& k : n->kids) kids.push_back(walk(k));
        out = n->kind == ExprNode::Kind::Sum ? expr::sum(std::move(kids))
                                             : expr::product(std::move(kids));
        break;
      }
    }
    memo.emplace(n.get(), out);
    return out;
  };
  return walk(e);
}

std::optional<QTorusElement> to_element(const ExprPtr& e) {
  std::unordered_map<const ExprNode*, std::optional<QTorusElement>> memo;
  std::function<std::optional<QTorusElement>(const ExprPtr&)> walk =
      [&](const ExprPtr& n) -> std::optional<QTorusElement> {
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    std::optional<QTorusElement> out;
    switch (n->kind) {
      case ExprNode::Kind::Generator:
        out = QTorusElement::generator(n->sig, n->gen);
        break;
      case ExprNode::Kind::Scalar:
        out = QTorusElement::scalar(n->sig, n->coeff);
        break;
      case ExprNode::Kind::Inverse: {
        auto kid = walk(n->kids.front());
        out = kid ? kid->inverse() : std::nullopt;
        break;
      }
      case ExprNode::Kind::Sum:
      case ExprNode::Kind::Product: {
        out = walk(n->kids.front());
        for (size_t i = 1; out && i < n->kids.size(); ++i) {
          auto kid = walk(n->kids[i]);
          if (!kid)
            out = std::nullopt;
          else
            out = n->kind == ExprNode::Kind::Sum ? (*out + *kid) : (*out * *kid);
        }
        break;
      }
    }
    memo.emplace(n.get(), out);
    return out;
  };
  return walk(e);
}

namespace {

double eval_q1_cached(const ExprPtr& e, const std::vector<double>& point,
                      std::unordered_map<const ExprNode*, double>& memo) {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  double v = 0.0;
  switch (e->kind) {
    case ExprNode::Kind::Generator:
      v = point[e->gen];
      break;
    case ExprNode::Kind::Scalar:
      v = e->coeff.eval_at_one();
      break;
    case ExprNode::Kind::Sum:
      for (const auto& k : e->kids) v += eval_q1_cached(k, point, memo);
      break;
    case ExprNode::Kind::Product:
      v = 1.0;
      for (const auto& k : e->kids) v *= eval_q1_cached(k, point, memo);
      break;
    case ExprNode::Kind::Inverse: {
      double d = eval_q1_cached(e->kids.front(), point, memo);
      if (std::fabs(d) < 1e-200)
        throw SingularEval("zero denominator at q=1 point in " +
                           expr::str(e->kids.front()).substr(0, 160));
      v = 1.0 / d;
      break;
    }
  }
  memo.emplace(e.get(), v);
  return v;
}

CMatrix eval_dense_cached(const ExprPtr& e, const DenseContext& ctx,
                          std::unordered_map<const ExprNode*, CMatrix>& memo) {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  CMatrix v;
  switch (e->kind) {
    case ExprNode::Kind::Generator:
      v = ctx.gens[e->gen];
      break;
    case ExprNode::Kind::Scalar:
      v = e->coeff.eval(ctx.q) * CMatrix::Identity(ctx.dim, ctx.dim);
      break;
    case ExprNode::Kind::Sum: {
      v = CMatrix::Zero(ctx.dim, ctx.dim);
      for (const auto& k : e->kids) v += eval_dense_cached(k, ctx, memo);
      break;
    }
    case ExprNode::Kind::Product: {
      v = eval_dense_cached(e->kids.front(), ctx, memo);
      for (size_t i = 1; i < e->kids.size(); ++i)
        v = v * eval_dense_cached(e->kids[i], ctx, memo);
      break;
    }
    case ExprNode::Kind::Inverse: {
      CMatrix d = eval_dense_cached(e->kids.front(), ctx, memo);
      Eigen::FullPivLU<CMatrix> lu(d);
      if (!lu.isInvertible())
        throw SingularEval("singular matrix under Inverse at level N=" +
                           std::to_string(ctx.N) + " in " +
                           expr::str(e->kids.front()).substr(0, 160));
      v = lu.inverse();
      break;
    }
  }
  memo.emplace(e.get(), v);
  return v;
}

} // namespace

double eval_q1(const ExprPtr& e, const std::vector<double>& point) {
  if (static_cast<int>(point.size()) != e->sig->size())
    throw std::invalid_argument("evaluation point size mismatch");
  std::unordered_map<const ExprNode*, double> memo;
  return eval_q1_cached(e, point, memo);
}

namespace {

// Positive weight for one generator image, stable across support groupings.
double generator_weight(unsigned long long seed, int N, int gen) {
  std::mt19937_64 rng((seed + 1) * 0x9e3779b97f4a7c15ULL +
                      static_cast<unsigned long long>(N) * 0xbf58476d1ce4e5b9ULL +
                      static_cast<unsigned long long>(gen) * 0x94d049bb133111ebULL);
  std::uniform_real_distribution<double> logu(std::log(0.2), std::log(5.0));
  return std::exp(logu(rng));
}

// Context populated only on a generator support set, using the reduced
// representation of the sub-signature. Expressions touching few generators
// evaluate in a far smaller dimension than the full algebra would need.
DenseContext make_support_context(const SigPtr& sig, const std::vector<int>& support, int N,
                                  unsigned long long seed, long long max_dim) {
  std::vector<std::vector<int>> sub(support.size(), std::vector<int>(support.size()));
  std::vector<std::string> names(support.size());
  for (size_t i = 0; i < support.size(); ++i) {
    names[i] = sig->names[support[i]];
    for (size_t j = 0; j < support.size(); ++j) sub[i][j] = sig->eps[support[i]][support[j]];
  }
  ClockShiftRep rep = reduced_rep(make_signature(std::move(sub), std::move(names)), N);
  if (rep.dimension() > max_dim)
    throw std::invalid_argument("reduced representation dimension exceeds dense budget");
  DenseContext ctx;
  ctx.sig = sig;
  ctx.N = N;
  ctx.q = root_of_unity_q(N);
  ctx.dim = rep.dimension();
  ctx.gens.assign(sig->size(), CMatrix());
  for (size_t i = 0; i < support.size(); ++i)
    ctx.gens[support[i]] = generator_weight(seed, N, support[i]) * to_dense(rep.gens[i], max_dim);
  return ctx;
}

void collect_support(const ExprPtr& e, std::set<int>& out,
                     std::set<const ExprNode*>& seen) {
  if (!seen.insert(e.get()).second) return;
  if (e->kind == ExprNode::Kind::Generator) out.insert(e->gen);
  for (const auto& k : e->kids) collect_support(k, out, seen);
}

} // namespace

DenseContext make_dense_context(SigPtr sig, int N, unsigned long long seed,
                                long long max_dim) {
  std::vector<int> all(sig->size());
  for (int i = 0; i < sig->size(); ++i) all[i] = i;
  return make_support_context(sig, all, N, seed, max_dim);
}

CMatrix eval_dense(const ExprPtr& e, const DenseContext& ctx) {
  if (!(*e->sig == *ctx.sig)) throw std::invalid_argument("context signature mismatch");
  std::unordered_map<const ExprNode*, CMatrix> memo;
  return eval_dense_cached(e, ctx, memo);
}

std::string Verdict::str() const {
  switch (value) {
    case Value::Equal:
      return "equal";
    case Value::Unequal:
      return "unequal{" + witness + "}";
    default:
      return "inconclusive{" + witness + "}";
  }
}

std::vector<Verdict> expr_equal_many(const std::vector<std::pair<ExprPtr, ExprPtr>>& pairs,
                                     const EqualityPolicy& pol) {
  if (pol.q1_points <= 0 && pol.rou_levels.empty())
    throw std::invalid_argument("equality policy enables no checks");
  std::vector<Verdict> verdicts(pairs.size());
  if (pairs.empty()) return verdicts;
  const SigPtr sig = pairs.front().first->sig;
  for (const auto& [a, b] : pairs)
    if (!(*a->sig == *sig) || !(*b->sig == *sig))
      throw std::invalid_argument("equality batch mixes signatures");

  std::vector<bool> decided(pairs.size(), false);
  std::vector<int> rou_passes(pairs.size(), 0), checks(pairs.size(), 0);

  // exact normal-form fast path
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto ea = to_element(pairs[i].first);
    if (!ea) continue;
    auto eb = to_element(pairs[i].second);
    if (!eb) continue;
    decided[i] = true;
    if (*ea == *eb) {
      verdicts[i].value = Verdict::Value::Equal;
      verdicts[i].witness = "";
    } else {
      verdicts[i].value = Verdict::Value::Unequal;
      verdicts[i].residual = 1.0;
      std::string diff = (*ea - *eb).str();
      if (diff.size() > 200) diff = diff.substr(0, 200) + "...";
      verdicts[i].witness = "layer=exact diff=" + diff;
    }
  }

  auto note_unequal = [&](size_t i, double res, const std::string& witness) {
    decided[i] = true;
    verdicts[i].value = Verdict::Value::Unequal;
    verdicts[i].residual = res;
    verdicts[i].witness = witness;
  };

  // random positive q=1 points, log-uniform in [0.1, 10]
  std::mt19937_64 rng(pol.seed);
  std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0));
  for (int p = 0; p < pol.q1_points; ++p) {
    std::vector<double> point(sig->size());
    for (double& x : point) x = std::exp(logu(rng));
    std::unordered_map<const ExprNode*, double> memo;
    for (size_t i = 0; i < pairs.size(); ++i) {
      if (decided[i]) continue;
      try {
        double va = eval_q1_cached(pairs[i].first, point, memo);
        double vb = eval_q1_cached(pairs[i].second, point, memo);
        double res = std::fabs(va - vb) / std::max({std::fabs(va), std::fabs(vb), 1.0});
        if (res > pol.tolerance) {
          std::ostringstream w;
          w << "layer=q1 seed=" << pol.seed << " point=" << p << " residual=" << res;
          note_unequal(i, res, w.str());
        } else {
          ++checks[i];
        }
      } catch (const SingularEval&) {
        // measure-zero context for this pair; skip it here
      }
    }
  }

  // root-of-unity matrix layers, evaluated per generator-support group so
  // that pairs touching few generators use a small representation
  std::map<std::vector<int>, std::vector<size_t>> groups;
  for (size_t i = 0; i < pairs.size(); ++i) {
    if (decided[i]) continue;
    std::set<int> used;
    std::set<const ExprNode*> seen;
    collect_support(pairs[i].first, used, seen);
    collect_support(pairs[i].second, used, seen);
    groups[std::vector<int>(used.begin(), used.end())].push_back(i);
  }
  for (int N : pol.rou_levels) {
    for (const auto& [support, members] : groups) {
      DenseContext ctx = make_support_context(sig, support, N, pol.seed, 2048);
      std::unordered_map<const ExprNode*, CMatrix> memo;
      for (size_t i : members) {
        if (decided[i]) continue;
        try {
          CMatrix va = eval_dense_cached(pairs[i].first, ctx, memo);
          CMatrix vb = eval_dense_cached(pairs[i].second, ctx, memo);
          double res = (va - vb).norm() / std::max({va.norm(), vb.norm(), 1.0});
          if (res > pol.tolerance) {
            std::ostringstream w;
            w << "layer=rou N=" << N << " residual=" << res;
            note_unequal(i, res, w.str());
          } else {
            ++checks[i];
            ++rou_passes[i];
          }
        } catch (const SingularEval&) {
        }
      }
    }
  }

  for (size_t i = 0; i < pairs.size(); ++i) {
    if (decided[i]) continue;
    if (checks[i] == 0) {
      verdicts[i].value = Verdict::Value::Inconclusive;
      verdicts[i].witness = "all evaluation contexts were singular";
    } else if (rou_passes[i] == 0 && !pol.rou_levels.empty()) {
      verdicts[i].value = Verdict::Value::Inconclusive;
      verdicts[i].witness = "no root-of-unity context succeeded";
    } else {
      verdicts[i].value = Verdict::Value::Equal;
    }
  }
  return verdicts;
}

Verdict expr_equal(const ExprPtr& a, const ExprPtr& b, const EqualityPolicy& pol) {
  return expr_equal_many({{a, b}}, pol).front();
}

} // namespace qteich
