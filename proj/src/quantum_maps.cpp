#include "qteich/quantum_maps.hpp"

#include <sstream>
#include <stdexcept>

namespace qteich {

GeneratorMap identity_map(SigPtr sig) {
  GeneratorMap m;
  m.source = sig;
  m.target = sig;
  for (int i = 0; i < sig->size(); ++i) m.images.push_back(expr::generator(sig, i));
  m.label = "id";
  return m;
}

GeneratorMap compose(const GeneratorMap& outer, const GeneratorMap& inner) {
  if (!(*outer.source == *inner.target))
    throw std::invalid_argument("map composition signature mismatch");
  GeneratorMap m;
  m.source = inner.source;
  m.target = outer.target;
  m.images.reserve(inner.images.size());
  for (const auto& img : inner.images) m.images.push_back(substitute(img, outer.images));
  m.label = outer.label + "," + inner.label;
  return m;
}

SigPtr edge_signature(const IdealTriangulation& lam) {
  return edge_algebra_signature(lam.skew_form());
}

SigPtr triangle_signature(const DecoratedTriangulation& tau) {
  return triangle_algebra_signature(tau.num_triangles());
}

GeneratorMap cf_flip_map(const IdealTriangulation& lam, int edge) {
  const FlipCase fc = lam.classify_flip(edge);
  const IdealTriangulation flipped = lam.flip(edge);
  SigPtr target = edge_signature(lam);
  SigPtr source = edge_signature(flipped);

  GeneratorMap m;
  m.source = source;
  m.target = target;
  m.label = "flip(" + std::to_string(edge + 1) + ")";
  for (int h = 0; h < target->size(); ++h) m.images.push_back(expr::generator(target, h));

  const ExprPtr xi = expr::generator(target, edge);
  // (1 + q^k X_e) and (1 + q^k X_e^{-1})^{-1}
  auto fplus = [&](int k) {
    return expr::sum({expr::one(target), expr::product({expr::scalar(target, LaurentPoly::q_power(k)), xi})});
  };
  auto fminus_inv = [&](int k) {
    return expr::inverse(expr::sum(
        {expr::one(target),
         expr::product({expr::scalar(target, LaurentPoly::q_power(k)), expr::inverse(xi)})}));
  };
  auto mul_in = [&](int e, std::vector<ExprPtr> front) {
    front.push_back(expr::generator(target, e));
    m.images[e] = expr::product(std::move(front));
  };

  m.images[edge] = expr::inverse(xi);
  switch (fc.case_id) {
    case 1:
      mul_in(fc.ej, {fplus(1)});
      mul_in(fc.el, {fplus(1)});
      mul_in(fc.ek, {fminus_inv(1)});
      mul_in(fc.em, {fminus_inv(1)});
      break;
    case 2: // j = k
      mul_in(fc.ej, {xi});
      mul_in(fc.el, {fplus(1)});
      mul_in(fc.em, {fminus_inv(1)});
      break;
    case 3: // j = m
      mul_in(fc.ej, {xi});
      mul_in(fc.ek, {fminus_inv(1)});
      mul_in(fc.el, {fplus(1)});
      break;
    case 4: // j = l
      mul_in(fc.ej, {fplus(1), fplus(3)});
      mul_in(fc.ek, {fminus_inv(1)});
      mul_in(fc.em, {fminus_inv(1)});
      break;
    case 5: // k = m
      mul_in(fc.ej, {fplus(1)});
      mul_in(fc.el, {fplus(1)});
      mul_in(fc.ek, {fminus_inv(1), fminus_inv(3)});
      break;
    case 6: // j = k and l = m
      mul_in(fc.ej, {xi});
      mul_in(fc.el, {xi});
      break;
    case 7: // j = m and k = l
      mul_in(fc.ej, {xi});
      mul_in(fc.ek, {xi});
      break;
    case 8: // j = l and k = m
      mul_in(fc.ej, {fplus(1), fplus(3)});
      mul_in(fc.ek, {fminus_inv(1), fminus_inv(3)});
      break;
    default:
      throw std::logic_error("unknown flip case");
  }
  return m;
}

GeneratorMap cf_reindex_map(const IdealTriangulation& lam, const Perm& alpha) {
  const IdealTriangulation relabeled = lam.reindex_edges(alpha);
  SigPtr target = edge_signature(lam);
  GeneratorMap m;
  m.source = edge_signature(relabeled);
  m.target = target;
  m.label = "reindex-edges";
  // the generator labeled i downstream is the old edge alpha^{-1}(i)
  const Perm inv = inverse_perm(alpha);
  for (int i = 0; i < target->size(); ++i)
    m.images.push_back(expr::generator(target, inv[i]));
  return m;
}

GeneratorMap kash_reindex_map(const DecoratedTriangulation& tau, const Perm& alpha) {
  SigPtr sig = triangle_signature(tau);
  if (static_cast<int>(alpha.size()) != tau.num_triangles() || !is_perm(alpha))
    throw std::invalid_argument("invalid triangle relabeling");
  GeneratorMap m;
  m.source = sig;
  m.target = sig;
  m.label = "reindex-triangles";
  m.images.resize(sig->size());
  const Perm inv = inverse_perm(alpha);
  for (int t = 0; t < tau.num_triangles(); ++t) {
    m.images[gen_Y(t)] = expr::generator(sig, gen_Y(inv[t]));
    m.images[gen_Z(t)] = expr::generator(sig, gen_Z(inv[t]));
  }
  return m;
}

GeneratorMap kash_rho_map(const DecoratedTriangulation& tau, int tri,
                          const KashaevParams& par) {
  if (tri < 0 || tri >= tau.num_triangles())
    throw std::invalid_argument("triangle index out of range");
  SigPtr sig = triangle_signature(tau);
  GeneratorMap m = identity_map(sig);
  m.label = "rho(" + std::to_string(tri + 1) + ")";
  const ExprPtr y = expr::generator(sig, gen_Y(tri));
  const ExprPtr z = expr::generator(sig, gen_Z(tri));
  m.images[gen_Y(tri)] =
      expr::product({expr::scalar(sig, par.a), expr::inverse(y), z});
  m.images[gen_Z(tri)] = expr::inverse(y);
  return m;
}

GeneratorMap kash_phi_map(const DecoratedTriangulation& tau, int i, int j,
                          const KashaevParams& par) {
  if (!tau.exchange_applicable(i, j))
    throw std::invalid_argument("exchange needs both marks opposite the shared edge");
  SigPtr sig = triangle_signature(tau);
  GeneratorMap m = identity_map(sig);
  m.label = "phi(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  const ExprPtr yi = expr::generator(sig, gen_Y(i)), yj = expr::generator(sig, gen_Y(j));
  const ExprPtr zi = expr::generator(sig, gen_Z(i)), zj = expr::generator(sig, gen_Z(j));
  const ExprPtr b = expr::scalar(sig, par.b);
  const ExprPtr denom_inv = expr::inverse(
      expr::sum({expr::product({b, yi, yj}), expr::product({zi, zj})}));
  m.images[gen_Y(i)] = expr::product({denom_inv, zj});
  m.images[gen_Z(i)] = expr::product({b, denom_inv, yi});
  m.images[gen_Y(j)] = expr::product({denom_inv, zi});
  m.images[gen_Z(j)] = expr::product({b, denom_inv, yj});
  return m;
}

GeneratorMap ideal_move_map(const IdealTriangulation& lam, const Move& mv) {
  switch (mv.kind) {
    case Move::Kind::FlipEdge:
      return cf_flip_map(lam, mv.edge);
    case Move::Kind::ReindexEdges:
      return cf_reindex_map(lam, mv.perm);
    default:
      throw std::invalid_argument("move not defined on ideal triangulations");
  }
}

GeneratorMap decorated_move_map(const DecoratedTriangulation& tau, const Move& mv,
                                const KashaevParams& par) {
  switch (mv.kind) {
    case Move::Kind::MarkRotation:
      return kash_rho_map(tau, mv.tri, par);
    case Move::Kind::Exchange:
      return kash_phi_map(tau, mv.tri_i, mv.tri_j, par);
    case Move::Kind::ReindexTriangles:
      return kash_reindex_map(tau, mv.perm);
    default:
      throw std::invalid_argument("move not defined on decorated triangulations");
  }
}

GeneratorMap compose_ideal_path(const IdealTriangulation& lam, const MoveSeq& seq) {
  GeneratorMap res = identity_map(edge_signature(lam));
  IdealTriangulation cur = lam;
  for (const Move& mv : seq) {
    res = compose(res, ideal_move_map(cur, mv));
    cur = apply_move(cur, mv);
  }
  return res;
}

GeneratorMap compose_decorated_path(const DecoratedTriangulation& tau, const MoveSeq& seq,
                                    const KashaevParams& par) {
  GeneratorMap res = identity_map(triangle_signature(tau));
  DecoratedTriangulation cur = tau;
  for (const Move& mv : seq) {
    res = compose(res, decorated_move_map(cur, mv, par));
    cur = apply_move(cur, mv);
  }
  return res;
}

QTorusElement f_tau_element(const DecoratedTriangulation& tau, int edge) {
  SigPtr sig = triangle_signature(tau);
  const auto& slots = tau.base().edge_slots(edge);
  const int mu = slots[0].tri, nu = slots[1].tri;
  const int s = tau.dec_side(mu, slots[0].side), t = tau.dec_side(nu, slots[1].side);
  QTorusElement hs = side_elements(sig, mu)[s];
  QTorusElement ht = side_elements(sig, nu)[t];
  QTorusElement out = hs * ht;
  if (mu == nu) out = out.scaled(LaurentPoly::q_power(side_form(t, s)));
  return out;
}

GeneratorMap f_tau_map(const DecoratedTriangulation& tau) {
  GeneratorMap m;
  m.source = edge_signature(tau.base());
  m.target = triangle_signature(tau);
  m.label = "link";
  for (int e = 0; e < tau.base().num_edges(); ++e)
    m.images.push_back(expr::from_element(f_tau_element(tau, e)));
  return m;
}

QTorusElement central_element(const IdealTriangulation& lam) {
  SigPtr sig = edge_signature(lam);
  auto sigma = lam.skew_form();
  long long total = 0;
  for (int i = 0; i < lam.num_edges(); ++i)
    for (int j = i + 1; j < lam.num_edges(); ++j) total += sigma[i][j];
  std::vector<int> ones(lam.num_edges(), 1);
  return QTorusElement::monomial(sig, ones, LaurentPoly::q_power(static_cast<int>(-total)));
}

QTorusElement apply_monomial_map(const QTorusElement& x, const GeneratorMap& map) {
  if (!(*x.sig() == *map.source)) throw std::invalid_argument("map source mismatch");
  std::vector<QTorusElement> images;
  std::vector<std::optional<QTorusElement>> inverses;
  for (const auto& img : map.images) {
    auto el = to_element(img);
    if (!el) throw std::invalid_argument("map image is not a torus element");
    inverses.push_back(el->inverse());
    images.push_back(std::move(*el));
  }
  QTorusElement acc(map.target);
  for (const auto& [exps, coeff] : x.terms()) {
    QTorusElement term = QTorusElement::scalar(map.target, coeff);
    for (size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == 0) continue;
      if (exps[i] < 0 && !inverses[i])
        throw std::invalid_argument("image not invertible for a negative exponent");
      const QTorusElement& base = exps[i] > 0 ? images[i] : *inverses[i];
      for (int r = 0; r < std::abs(exps[i]); ++r) term = term * base;
    }
    acc = acc + term;
  }
  return acc;
}

Verdict map_equal(const GeneratorMap& m1, const GeneratorMap& m2, const EqualityPolicy& pol) {
  if (!(*m1.source == *m2.source) || !(*m1.target == *m2.target)) {
    Verdict v;
    v.value = Verdict::Value::Unequal;
    v.residual = 1.0;
    v.witness = "source/target signatures differ";
    return v;
  }
  std::vector<std::pair<ExprPtr, ExprPtr>> pairs;
  for (size_t i = 0; i < m1.images.size(); ++i) pairs.emplace_back(m1.images[i], m2.images[i]);
  auto verdicts = expr_equal_many(pairs, pol);
  Verdict out;
  out.value = Verdict::Value::Equal;
  for (size_t i = 0; i < verdicts.size(); ++i) {
    if (verdicts[i].unequal()) {
      out = verdicts[i];
      out.witness = "generator " + m1.source->names[i] + ": " + verdicts[i].witness;
      return out;
    }
    if (!verdicts[i].equal() && out.value == Verdict::Value::Equal) {
      out.value = Verdict::Value::Inconclusive;
      out.witness = "generator " + m1.source->names[i] + ": " + verdicts[i].witness;
    }
  }
  return out;
}

Verdict homomorphism_witness(const GeneratorMap& m, const EqualityPolicy& pol) {
  std::vector<std::pair<ExprPtr, ExprPtr>> pairs;
  const auto& eps = m.source->eps;
  for (int i = 0; i < m.source->size(); ++i)
    for (int j = i + 1; j < m.source->size(); ++j) {
      ExprPtr lhs = expr::product({m.images[i], m.images[j]});
      ExprPtr rhs = expr::product(
          {expr::scalar(m.target, LaurentPoly::q_power(2 * eps[i][j])), m.images[j],
           m.images[i]});
      pairs.emplace_back(lhs, rhs);
    }
  auto verdicts = expr_equal_many(pairs, pol);
  Verdict out;
  out.value = Verdict::Value::Equal;
  size_t k = 0;
  for (int i = 0; i < m.source->size(); ++i)
    for (int j = i + 1; j < m.source->size(); ++j, ++k) {
      if (verdicts[k].unequal()) {
        out = verdicts[k];
        out.witness = "relation (" + m.source->names[i] + "," + m.source->names[j] +
                      "): " + verdicts[k].witness;
        return out;
      }
      if (!verdicts[k].equal() && out.value == Verdict::Value::Equal) {
        out.value = Verdict::Value::Inconclusive;
        out.witness = verdicts[k].witness;
      }
    }
  return out;
}

DiagramReport check_diagram(const DecoratedTriangulation& tau, const Move& mv,
                            const KashaevParams& par, const EqualityPolicy& pol) {
  const DecoratedTriangulation tau2 = apply_move(tau, mv);
  const GeneratorMap f1 = f_tau_map(tau);
  const GeneratorMap f2 = f_tau_map(tau2);
  const GeneratorMap km = decorated_move_map(tau, mv, par);

  // Edge-algebra side of the square: identity for mark rotations and triangle
  // relabelings, the quantum flip for a decorated exchange.
  GeneratorMap sm;
  if (mv.kind == Move::Kind::Exchange)
    sm = cf_flip_map(tau.base(), tau.exchange_edge(mv.tri_i, mv.tri_j));
  else
    sm = identity_map(edge_signature(tau.base()));

  std::vector<std::pair<ExprPtr, ExprPtr>> pairs;
  for (int h = 0; h < sm.source->size(); ++h) {
    ExprPtr lhs = substitute(sm.images[h], f1.images); // F_tau after edge-side change
    ExprPtr rhs = substitute(f2.images[h], km.images); // triangle-side change after F_tau'
    pairs.emplace_back(lhs, rhs);
  }
  DiagramReport rep;
  rep.per_generator = expr_equal_many(pairs, pol);
  rep.commutes = true;
  for (size_t h = 0; h < rep.per_generator.size(); ++h) {
    if (!rep.per_generator[h].equal()) {
      rep.commutes = false;
      if (rep.witness.empty())
        rep.witness = "X" + std::to_string(h + 1) + ": " + rep.per_generator[h].str();
    }
  }
  return rep;
}

} // namespace qteich
