#pragma once

#include <optional>
#include <vector>

#include "webtensor/loop.hpp"

namespace webtensor {

// Drops the stabilizer coordinates of every value of a map known to be
// V-valued; throws std::logic_error if a dropped entry is nonzero.
MultilinearMap restrict_to_v(const Split& split, const MultilinearMap& map);

// Polarized coefficient maps of a loop expansion, all with slot_dim v_dim and
// codomain_dim dim. K/L/M/P/Q/U index the composition series by multidegree
// (1,1), (2,1), (1,2), (3,1), (2,2), (1,3); E and F index the correction
// series by (2,1) and (1,2).
struct ExpansionCoefficients {
  MultilinearMap K, L, M, P, Q, U, E, F;
};
ExpansionCoefficients extract_coefficients(const LoopExpansion& exp);

// A basis tuple (1-based) together with the offending value.
struct TensorWitness {
  std::vector<int> tuple;
  AlgVec value;
};

// Torsion: a = -K, and its closed form -1/2 proj_V[x,y]. Slots and codomain
// range over the V basis.
MultilinearMap tensor_a_generic(const LoopExpansion& exp, const Split& split);
MultilinearMap tensor_a_closed(const LieAlgebra& alg, const Split& split);

// Curvature combination B(x,y,z) = 2L(x,y,z) - 2M(x,y,z) - K(x,K(y,z))
// + K(K(x,y),z) and the curvature tensor b(x,y,z) = -B(y,x,z).
MultilinearMap tensor_B_generic(const LoopExpansion& exp, const Split& split);
MultilinearMap tensor_b_generic(const LoopExpansion& exp, const Split& split);
// Closed form -1/2 proj[[x,y],z] + 1/2 proj[proj[x,y],z] - 2 proj[R(x,y),z].
MultilinearMap tensor_b_closed(const LieAlgebra& alg, const Split& split,
                               const SectionJet& section);
// Variant with the middle sign flipped, as printed in one place of the
// source derivation; kept only to document which sign the generic path picks.
MultilinearMap tensor_b_closed_variant(const LieAlgebra& alg, const Split& split,
                                       const SectionJet& section);

// Degree-4 combinations for the curvature derivatives, evaluated literally:
// c(x,y,z,t) = (4Q-6P)(y,t,x,z) + a(t,b(x,y,z)) + a(y,b(x,t,z))
//   - b(x,a(t,y),z) + a(2L(y,t,x),z) - 2L(a(x,y),t,z) - 2L(y,a(x,t),z)
//   - 2L(y,t,a(x,z))
// d(x,y,z,t) = (4Q-6P)(y,x,z,t) - a(b(x,y,z),t) - a(b(x,y,t),z)
//   + b(x,y,a(z,t)) + a(y,2M(x,z,t)) - 2M(a(y,x),z,t) - 2M(y,a(z,x),t)
//   - 2M(y,z,a(t,x))
// with (4Q-6P) applied positionally (x-block slots first).
MultilinearMap tensor_c_formula(const LoopExpansion& exp, const Split& split);
MultilinearMap tensor_d_formula(const LoopExpansion& exp, const Split& split);

// Variant of the d combination with the quartic head (4Q-6P) replaced by its
// mirror image (4Q-6U) and the whole right side negated. Expanding the
// v-derived loop's jet coefficients by the product rule yields exactly this
// combination (the P contributions cancel), so it is the one the derivative
// path validates; kept to document that fact.
MultilinearMap tensor_d_formula_variant(const LoopExpansion& exp, const Split& split);

// Derivative realizations: slot 4 is the direction of differentiation. c is
// the first-order change of the curvature of the u-derived loop, d that of
// the v-derived loop.
MultilinearMap tensor_c_derivative(const LoopExpansion& exp, const Split& split);
MultilinearMap tensor_d_derivative(const LoopExpansion& exp, const Split& split);

// Nine-term closed form for d:
// d(xi,eta,zeta,tau) = 1/2 P[tau,[[xi,eta],zeta]] - 1/2 P[tau,P[[xi,eta],zeta]]
//   - 1/2 P[tau,[P[xi,eta],zeta]] + 1/2 P[tau,P[P[xi,eta],zeta]]
//   - 1/2 P[P[tau,[xi,eta]],zeta] + 1/2 P[P[tau,P[xi,eta]],zeta]
//   + 2 P[tau,[R(xi,eta),zeta]] - 2 P[tau,P[R(xi,eta),zeta]]
//   - 2 P[P[tau,R(xi,eta)],zeta]            (P = projection onto V)
MultilinearMap tensor_d_closed(const LieAlgebra& alg, const Split& split,
                               const SectionJet& section);

// Torsion derivatives, slots (xi, eta; zeta) with zeta the direction:
//   nabla2: -1/2 P[[xi,eta],zeta] + 1/2 P[P[xi,eta],zeta]
//   nabla1: -1/4 P[[xi,zeta],eta] + 1/4 P[P[xi,zeta],eta] - P[R(xi,zeta),eta]
//           + 1/4 P[[eta,zeta],xi] - 1/4 P[P[eta,zeta],xi] + P[R(eta,zeta),xi]
MultilinearMap nabla2_a_closed(const LieAlgebra& alg, const Split& split);
MultilinearMap nabla1_a_closed(const LieAlgebra& alg, const Split& split,
                               const SectionJet& section);

// The same derivatives as alternations of the curvature tensor:
//   nabla1(xi,eta;zeta) = 1/2 (b(xi,zeta,eta) - b(eta,zeta,xi))
//   nabla2(xi,eta;zeta) = 1/2 (b(xi,eta,zeta) - b(eta,xi,zeta))
MultilinearMap nabla1_from_b(const MultilinearMap& b);
MultilinearMap nabla2_from_b(const MultilinearMap& b);

// And as first-order changes of the torsion of the derived loops.
MultilinearMap nabla1_a_derivative(const LoopExpansion& exp, const Split& split);
MultilinearMap nabla2_a_derivative(const LoopExpansion& exp, const Split& split);

// First basis quadruple violating
// 1/2 (d(xi,eta,zeta,tau) - d(xi,eta,tau,zeta)) = -b(xi,eta,a(zeta,tau)).
std::optional<TensorWitness> check_d_alternation(const MultilinearMap& d,
                                                 const MultilinearMap& b,
                                                 const MultilinearMap& a);

// Hexagonality. The jet criterion is the cyclic sum
// P[R(xi,eta),zeta] + P[R(eta,zeta),xi] + P[R(zeta,xi),eta] = 0; the
// curvature criterion is the vanishing cyclic average of b. Both are
// evaluated independently on every triple; per-triple disagreement between
// the two zero-sets is reported separately from the verdict.
AlgVec hexagonal_r_sum(const LieAlgebra& alg, const Split& split,
                       const SectionJet& section, int i, int j, int k);
AlgVec hexagonal_b_avg(const MultilinearMap& b, int i, int j, int k);

struct HexagonalityVerdict {
  bool hexagonal = false;
  std::optional<TensorWitness> r_witness;
  std::optional<TensorWitness> b_witness;
  std::vector<std::vector<int>> disagreements;  // 1-based triples
};
HexagonalityVerdict hexagonality(const LieAlgebra& alg, const Split& split,
                                 const SectionJet& section, const MultilinearMap& b);

// First quadruple (xi,eta,zeta,tau) violating the hexagonal-case condition
// sum_cyc(xi,eta,zeta) P{[tau,[R(xi,eta),zeta]] - [P[tau,R(xi,eta)],zeta]} = 0.
std::optional<TensorWitness> check_hexagonal_d(const LieAlgebra& alg, const Split& split,
                                               const SectionJet& section);

// Bundle used by the command-line front end; filled from the binding paths
// (generic for a and b, derivative realizations for c and d, closed forms
// for the torsion derivatives).
struct WebTensorSet {
  MultilinearMap a, B, b, c, d, nabla1_a, nabla2_a;
};
WebTensorSet build_web_tensors(const LieAlgebra& alg, const Split& split,
                               const SectionJet& section, const LoopExpansion& exp);

}  // namespace webtensor
