#pragma once

#include "webtensor/checks.hpp"
#include "webtensor/loop.hpp"
#include "webtensor/manifest.hpp"
#include "webtensor/tensors.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace support {

using namespace webtensor;

struct Fixture {
  std::string name;
  LieAlgebra alg;
  Split split;
  SectionJet section;
};

// Deterministic fixtures. Basis conventions:
//   fixture A: [e1,e2]=e3, [e3,e1]=2e1, [e3,e2]=-2e2, V=span{e1,e2}
//   fixture B: same algebra in the adapted order f1,f2,f3 with
//              [f1,f2]=-2f1, [f1,f3]=f2, [f2,f3]=-2f3, V=span{f1,f2}
Fixture fixture_a();
Fixture fixture_sl2r();     // A with R(e1,e1)=e3
Fixture fixture_b();
Fixture fixture_b_r();      // B with R(f1,f1)=f3
Fixture fixture_heis();     // [e1,e2]=e3, V=span{e1,e2}
Fixture fixture_abelian();  // dim 3, V=span{e1,e2}
Fixture fixture_abelian_rs();  // abelian with nonzero R and S
Fixture fixture_h_trivial();   // fixture A algebra with V = all of it
Fixture fixture_c();  // [e1,e2]=e3, [e1,e3]=e2+e3; quartic-formula discriminator
Fixture fixture_d();  // dim 4, 2-dim stabilizer acting on abelian V^2
Fixture fixture_d4(); // dim 4, v_dim 3, stabilizer-bracket-free V pairs

// The six fixture instances the binding comparisons run on.
std::vector<Fixture> named_fixtures();

// Step <= 4 graded algebras on which the quartic series is the exact group
// law: Heisenberg, the dim-4 filiform, free 2-generator step 3 (dim 5) with
// abelian paddings, free 2-generator step 4 (dim 8).
std::vector<LieAlgebra> nilpotent_catalog();

// Base (algebra, v_dim) pairs usable as adapted instances.
struct AdaptedBase {
  std::string name;
  LieAlgebra alg;
  int v_dim;
};
std::vector<AdaptedBase> adapted_catalog();

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  int uniform(int lo, int hi);  // inclusive
  Rat rat(int num_lo, int num_hi, int den_max);
  AlgVec vec(int dim, int num_lo, int num_hi, int den_max);
};

// Exact dense linear algebra over the rationals.
using RatMatrix = std::vector<std::vector<Rat>>;  // row major
RatMatrix mat_identity(int n);
bool mat_invert(const RatMatrix& m, RatMatrix& inverse);
// Basis of { x : m x = 0 }.
std::vector<std::vector<Rat>> mat_nullspace(const RatMatrix& m, int cols);

// Structure constants in the basis given by the columns of g (g invertible).
LieAlgebra change_basis(const LieAlgebra& alg, const RatMatrix& g, const RatMatrix& g_inv);
// Invertible block matrix [[A,0],[B,C]] preserving the adapted flag.
void random_adapted_change(Rng& rng, int dim, int v_dim, RatMatrix& g, RatMatrix& g_inv);
// Fully random invertible matrix.
void random_change(Rng& rng, int dim, RatMatrix& g, RatMatrix& g_inv);
// Invertible block-diagonal matrix [[A,0],[0,C]]: rotates V and the
// stabilizer separately, keeping the complement subspace itself.
void random_split_change(Rng& rng, int dim, int v_dim, RatMatrix& g, RatMatrix& g_inv);

MultilinearMap random_symmetric_r(Rng& rng, const Split& split);
MultilinearMap random_symmetric_s(Rng& rng, const Split& split);

// Random adapted instance: catalog base, random adapted basis change, random
// section jet. with_section=false leaves R=S=0.
Fixture random_instance(Rng& rng, bool with_section);
// Restricted to v_dim == 2 bases (where the two hexagonality criteria are
// provably equivalent triple by triple).
Fixture random_instance_v2(Rng& rng, bool with_section);

// Random R in the exact nullspace of the cyclic jet condition for the given
// instance (the algebra and split are kept, S is zeroed).
Fixture random_hexagonal_instance(Rng& rng);

// Basis of the solution family of the cyclic jet condition
// sigma proj[R(xi,eta),zeta] = 0 over symmetric stabilizer-valued R.
std::vector<MultilinearMap> hexagonal_jet_family(const LieAlgebra& alg,
                                                 const Split& split);

// compose(u, left_divide(u,w)) and compose(right_divide(w,v), v) formed at
// jet level (degree-4 truncation); the division postcondition says these are
// the plain second/first variable, so evaluating them realizes the
// round-trips exactly at rational points.
TruncatedSeries left_roundtrip_series(const LoopExpansion& exp);
TruncatedSeries right_roundtrip_series(const LoopExpansion& exp);

// Independent quartic group-law reference evaluated directly with the
// algebra bracket (no series machinery).
AlgVec bch4_reference(const LieAlgebra& alg, const AlgVec& a, const AlgVec& b);

}  // namespace support
