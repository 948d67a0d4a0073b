#pragma once

#include <string>
#include <vector>

#include "webtensor/rational.hpp"

namespace webtensor {

// Coordinate vector over the fixed basis e_1..e_dim (0-indexed internally).
using AlgVec = std::vector<Rat>;

AlgVec zero_vec(int dim);
AlgVec basis_vec(int dim, int i);
bool is_zero_vec(const AlgVec& v);
AlgVec& add_scaled(AlgVec& target, const Rat& scale, const AlgVec& v);
AlgVec vec_add(const AlgVec& a, const AlgVec& b);
AlgVec vec_sub(const AlgVec& a, const AlgVec& b);
AlgVec vec_scaled(const Rat& scale, const AlgVec& v);
AlgVec vec_neg(const AlgVec& v);
std::string vec_to_string(const AlgVec& v);

// Finite-dimensional algebra given by dense structure constants:
// [e_i, e_j] = sum_k structure(i,j,k) e_k. The constants are stored as given;
// antisymmetry and Jacobi are checked by validate(), not assumed.
struct LieAlgebra {
  int dim = 0;
  std::vector<Rat> c;  // dim^3, layout (i*dim + j)*dim + k

  explicit LieAlgebra(int dim_);

  Rat& structure(int i, int j, int k) { return c[std::size_t((i * dim + j) * dim + k)]; }
  const Rat& structure(int i, int j, int k) const { return c[std::size_t((i * dim + j) * dim + k)]; }

  // Sets [e_i,e_j] component on e_k to value and [e_j,e_i] to -value.
  void set_bracket(int i, int j, int k, const Rat& value);

  AlgVec bracket(const AlgVec& x, const AlgVec& y) const;
};

// Splitting of the algebra into V = span{e_1..e_v_dim} and the complement
// spanned by the remaining basis vectors (the stabilizer direction). The basis
// is required to be adapted: V first, stabilizer last. v_dim == dim means a
// trivial stabilizer.
struct Split {
  int dim = 0;
  int v_dim = 0;
};

// Projection onto V along the stabilizer: zeroes coordinates past v_dim.
AlgVec proj_v(const Split& split, const AlgVec& x);
// Complementary projection: zeroes the first v_dim coordinates.
AlgVec proj_h(const Split& split, const AlgVec& x);

struct ValidationIssue {
  std::string check;         // "antisymmetry" | "jacobi" | "split" | "dimension"
  std::vector<int> indices;  // 1-based witness indices
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
};

// Checks antisymmetry (including [e_i,e_i] = 0) and the Jacobi identity,
// recording the first failing pair/triple per check.
ValidationReport validate_algebra(const LieAlgebra& alg);

// Additionally checks 1 <= v_dim <= dim and that the stabilizer span is
// closed under the bracket.
ValidationReport validate_split(const LieAlgebra& alg, const Split& split);

}  // namespace webtensor
