#pragma once

#include "qteich/rational.hpp"
#include "qteich/surface.hpp"

#include <array>
#include <string>
#include <vector>

namespace qteich {

/// The two scalars of the generalized triangle-algebra coordinate changes,
/// kept formal (Laurent monomials in q) so that the compatibility
/// if-and-only-if statements separate symbolically. The distinguished values
/// are a = q^-2, b = q^3.
struct KashaevParams {
  LaurentPoly a = LaurentPoly::q_power(-2);
  LaurentPoly b = LaurentPoly::q_power(3);

  static KashaevParams canonical() { return {}; }
  static KashaevParams of(LaurentPoly a, LaurentPoly b) { return {std::move(a), std::move(b)}; }
};

/// An algebra map recorded by generator images: expressions over the target
/// algebra, one per source generator. Elementary coordinate changes go from
/// the moved triangulation's algebra to the original one's, so a move path
/// composes its maps in path order by substituting earlier images into later
/// ones.
struct GeneratorMap {
  SigPtr source, target;
  Substitution images;
  std::string label;
};

GeneratorMap identity_map(SigPtr sig);
/// outer after inner: substitute the outer images into the inner ones.
GeneratorMap compose(const GeneratorMap& outer, const GeneratorMap& inner);

SigPtr edge_signature(const IdealTriangulation& lam);
SigPtr triangle_signature(const DecoratedTriangulation& tau);

/// Quantum diagonal exchange: images of the flipped triangulation's edge
/// generators in the original edge algebra, by the identification pattern of
/// the square. Off the square X'_h -> X_h and always X'_e -> X_e^{-1}.
GeneratorMap cf_flip_map(const IdealTriangulation& lam, int edge);
/// Edge relabeling as a generator map.
GeneratorMap cf_reindex_map(const IdealTriangulation& lam, const Perm& alpha);

/// Triangle relabeling, mark rotation (Y' -> a Y^{-1} Z, Z' -> Y^{-1}) and
/// decorated exchange (common left factor (b Y_i Y_j + Z_i Z_j)^{-1}).
GeneratorMap kash_reindex_map(const DecoratedTriangulation& tau, const Perm& alpha);
GeneratorMap kash_rho_map(const DecoratedTriangulation& tau, int tri,
                          const KashaevParams& par = {});
GeneratorMap kash_phi_map(const DecoratedTriangulation& tau, int i, int j,
                          const KashaevParams& par = {});

GeneratorMap ideal_move_map(const IdealTriangulation& lam, const Move& mv);
GeneratorMap decorated_move_map(const DecoratedTriangulation& tau, const Move& mv,
                                const KashaevParams& par = {});

/// Composite coordinate change along a move path (empty path: identity).
GeneratorMap compose_ideal_path(const IdealTriangulation& lam, const MoveSeq& seq);
GeneratorMap compose_decorated_path(const DecoratedTriangulation& tau, const MoveSeq& seq,
                                    const KashaevParams& par = {});

/// The linking homomorphism from the edge algebra into the triangle algebra:
/// X_e -> q^{delta_{mu nu} sigma_{ts}} H^s_mu H^t_nu over the two sides the
/// edge bounds. Every image is a single monomial, computed exactly.
GeneratorMap f_tau_map(const DecoratedTriangulation& tau);
/// Exact image of one edge generator.
QTorusElement f_tau_element(const DecoratedTriangulation& tau, int edge);

/// q^{-sum_{i<j} sigma_ij} X_1 X_2 ... X_{3m}; central, and invariant under
/// coordinate change.
QTorusElement central_element(const IdealTriangulation& lam);

/// Push an element through a map whose images are invertible monomials
/// (exact; used for the quotient identity).
QTorusElement apply_monomial_map(const QTorusElement& x, const GeneratorMap& map);

/// Batched equality of two maps with common source/target.
Verdict map_equal(const GeneratorMap& m1, const GeneratorMap& m2, const EqualityPolicy& pol);

/// Does the map carry the source relations to the target? Checks
/// img_i img_j = q^{2 eps_ij} img_j img_i for all generator pairs.
Verdict homomorphism_witness(const GeneratorMap& m, const EqualityPolicy& pol);

struct DiagramReport {
  bool commutes = false;
  std::vector<Verdict> per_generator;
  std::string witness; // first failing generator and its context
};

/// Compatibility square for one elementary decorated move: the linking map
/// after the edge-algebra coordinate change against the triangle-algebra
/// coordinate change after the moved linking map.
DiagramReport check_diagram(const DecoratedTriangulation& tau, const Move& mv,
                            const KashaevParams& par, const EqualityPolicy& pol);

} // namespace qteich
