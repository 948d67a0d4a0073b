#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "webtensor/algebra.hpp"
#include "webtensor/multilinear.hpp"

namespace webtensor {

// Shape of a truncated polynomial map: `arity` formal vector variables of
// dimension vec_dim each, an optional nilpotent formal parameter t (t^2 = 0,
// counted as degree 1), and coeff_dim-dimensional coefficients. Everything of
// total degree > 4 is dropped by construction.
struct SeriesSignature {
  int arity = 0;
  int vec_dim = 0;
  bool has_param = false;
  int coeff_dim = 0;

  int var_count() const { return arity * vec_dim + (has_param ? 1 : 0); }
  bool operator==(const SeriesSignature&) const = default;
};

inline constexpr int kMaxDegree = 4;

// Monomial exponents packed one nibble per scalar variable (max 16 variables;
// exponents never exceed 4, so adding keys never carries across nibbles).
using MonoKey = std::uint64_t;

int key_degree(MonoKey key, int var_count);
int key_exponent(MonoKey key, int var);
MonoKey key_with_exponent(MonoKey key, int var, int exponent);

struct TruncatedSeries {
  SeriesSignature sig;
  std::map<MonoKey, AlgVec> terms;  // zero coefficient vectors are never stored

  static TruncatedSeries zero(const SeriesSignature& sig);
  // Identity series of the given vector variable (0-based): sum_i coord_i e_i.
  // Requires vec_dim <= coeff_dim (the variable space is spanned by the
  // leading basis vectors).
  static TruncatedSeries variable(const SeriesSignature& sig, int which);
  // t * direction, direction given in coefficient coordinates.
  static TruncatedSeries param(const SeriesSignature& sig, const AlgVec& direction);

  void add_term(MonoKey key, const Rat& scale, const AlgVec& coeff);
  bool is_zero() const { return terms.empty(); }
  bool operator==(const TruncatedSeries&) const = default;
};

TruncatedSeries series_combine(const Rat& a, const TruncatedSeries& A,
                               const Rat& b, const TruncatedSeries& B);
TruncatedSeries series_scaled(const Rat& s, const TruncatedSeries& A);
TruncatedSeries series_add(const TruncatedSeries& A, const TruncatedSeries& B);
TruncatedSeries series_sub(const TruncatedSeries& A, const TruncatedSeries& B);

// Pointwise bracket; coefficients must live in the algebra (coeff_dim == dim).
TruncatedSeries series_bracket(const LieAlgebra& alg, const TruncatedSeries& A,
                               const TruncatedSeries& B);

TruncatedSeries series_proj_v(const Split& split, const TruncatedSeries& A);
TruncatedSeries series_proj_h(const Split& split, const TruncatedSeries& A);

// Truncated group law in normal coordinates:
// a + b + 1/2[a,b] + 1/12[a,[a,b]] + 1/12[b,[b,a]]
//   - 1/48[b,[a,[a,b]]] - 1/48[a,[b,[a,b]]].
// Inputs must have no constant term.
TruncatedSeries bch4(const LieAlgebra& alg, const TruncatedSeries& A,
                     const TruncatedSeries& B);
// Group inverse in normal coordinates.
TruncatedSeries bch4_inverse(const TruncatedSeries& A);

// Composes a multilinear map with series arguments (one per slot). Arguments
// must share a signature; the map reads their leading slot_dim coordinates.
TruncatedSeries substitute(const MultilinearMap& map,
                           const std::vector<TruncatedSeries>& args);

// Substitutes series for the two vector variables of F. F must be param-free
// with arity 2; A and B share the result signature and must have no constant
// term. F's coefficients carry over (coeff_dim must match).
TruncatedSeries apply_two_var(const TruncatedSeries& F, const TruncatedSeries& A,
                              const TruncatedSeries& B);

// Coefficient of t (a param-free series over the same vector variables).
TruncatedSeries param_derivative(const TruncatedSeries& A);
// Terms with t-exponent zero, as a param-free series.
TruncatedSeries param_constant(const TruncatedSeries& A);

TruncatedSeries degree_slice(const TruncatedSeries& A, int degree);

// Polarized coefficient extraction: the symmetric multilinear map whose
// diagonal evaluation reproduces the terms of multidegree degs (degs[w] slots
// for vector variable w, in variable order) and the given t-exponent.
MultilinearMap coefficient_tensor(const TruncatedSeries& A,
                                  const std::vector<int>& degs, int param_deg = 0);

// Numeric evaluation at vec_dim-dimensional rational points (param-free only).
AlgVec series_evaluate(const TruncatedSeries& A, const std::vector<AlgVec>& args);

}  // namespace webtensor
