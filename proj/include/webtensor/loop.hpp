#pragma once

#include "webtensor/algebra.hpp"
#include "webtensor/multilinear.hpp"
#include "webtensor/series.hpp"

namespace webtensor {

// Pads an n-dimensional coordinate vector with zeros up to dim entries.
AlgVec pad_to(int dim, const AlgVec& v);
// Keeps the first dim coordinates; throws if any dropped coordinate is nonzero.
AlgVec truncate_to(int dim, const AlgVec& v);

// Quadratic/cubic jet of the section over V: the section is the graph of
// xi -> xi + R(xi,xi) + S(xi,xi,xi) with R, S symmetric and valued in the
// stabilizer complement coordinates (the last dim - v_dim entries).
struct SectionJet {
  MultilinearMap R;  // arity 2, slot_dim v_dim, codomain_dim dim
  MultilinearMap S;  // arity 3, slot_dim v_dim, codomain_dim dim
};

// Symmetrizes R, S and checks that their values lie in the stabilizer
// coordinates. Throws std::invalid_argument on shape or range violations.
SectionJet make_section(const Split& split, const MultilinearMap& R,
                        const MultilinearMap& S);
SectionJet zero_section(const Split& split);

// R(xi,xi) + S(xi,xi,xi) for a V-valued series argument.
TruncatedSeries phi_series(const SectionJet& section, const TruncatedSeries& xi);
// xi + R(xi,xi) + S(xi,xi,xi): the section lift of a V-valued series.
TruncatedSeries section_lift(const SectionJet& section, const TruncatedSeries& xi);

// Splits a group-valued series W as W = bch4(z + phi(z), eta) with z valued
// in V and eta in the stabilizer, solving degree by degree (the degree-d
// unknowns enter linearly and separate under the two projections). The
// factorization is verified exactly before returning.
struct SectionFactorization {
  TruncatedSeries z;    // V-valued
  TruncatedSeries eta;  // stabilizer-valued
};
SectionFactorization factor_through_section(const LieAlgebra& alg, const Split& split,
                                            const SectionJet& section,
                                            const TruncatedSeries& W);

// Composition series of the local loop induced by the section: z(x,y) is the
// V-coordinate of the projection of lift(x)*lift(y) onto the section, h(x,y)
// the stabilizer coordinate of the correction factor on the right:
// lift(z) = lift(x)*lift(y)*exp(h).
struct LoopExpansion {
  TruncatedSeries z_series;  // arity 2, vec_dim v_dim, coeff_dim dim, V-valued
  TruncatedSeries h_series;  // same signature, stabilizer-valued
};

// The normative construction: direct degree-by-degree solve. Validates the
// algebra and split first and refuses to run on invalid input.
LoopExpansion solve_loop_oracle(const LieAlgebra& alg, const Split& split,
                                const SectionJet& section);

// The closed formulas for the same expansion, evaluated literally term by
// term (including their degree-4 parts as printed); used as the comparison
// subject against the oracle, never as ground truth.
LoopExpansion closed_form_expansion(const LieAlgebra& alg, const Split& split,
                                    const SectionJet& section);

// Formal slot inversion for a two-variable series F with identity linear
// part in each slot: solve_second_slot finds T with F(A,T) = B and
// solve_first_slot finds T with F(T,A) = B, degree by degree; the result is
// verified exactly before returning.
TruncatedSeries solve_second_slot(const TruncatedSeries& F, const TruncatedSeries& A,
                                  const TruncatedSeries& B);
TruncatedSeries solve_first_slot(const TruncatedSeries& F, const TruncatedSeries& A,
                                 const TruncatedSeries& B);

// Division series: left_divide solves compose(u, result) = w in the formal
// variables (u, w); right_divide solves compose(result, v) = w in (w, v).
TruncatedSeries left_divide_series(const LoopExpansion& exp);
TruncatedSeries right_divide_series(const LoopExpansion& exp);

// Numeric evaluations (arguments and results in V coordinates, dimension
// v_dim). compose evaluates the composition polynomial; the divisions
// evaluate the division series.
AlgVec loop_compose(const Split& split, const LoopExpansion& exp,
                    const AlgVec& x, const AlgVec& y);
AlgVec loop_left_divide(const Split& split, const LoopExpansion& exp,
                        const AlgVec& u, const AlgVec& w);
AlgVec loop_right_divide(const Split& split, const LoopExpansion& exp,
                         const AlgVec& w, const AlgVec& v);

// Perturbed loops along a direction zeta in V, to first order in the
// nilpotent parameter t (u = t*zeta):
//   derived_loop_u:  x, y -> u \ ((u*x)*y)
//   derived_loop_v:  x, y -> (x*(y*v))/v
// Returned series carry the parameter; their t-0 part is the base loop.
TruncatedSeries derived_loop_u(const LoopExpansion& exp, const Split& split,
                               const AlgVec& zeta);
TruncatedSeries derived_loop_v(const LoopExpansion& exp, const Split& split,
                               const AlgVec& tau);

// Conjugation-transport isomorphism check to first order in u = t*zeta:
// the map x -> (u*x)u^{-1} carries the u-derived loop product to the induced
// product on the translated section. Returns true when the identity holds
// exactly through the truncation order.
bool check_transport_isomorphism(const LieAlgebra& alg, const Split& split,
                                 const SectionJet& section, const LoopExpansion& exp,
                                 const AlgVec& zeta);

}  // namespace webtensor
