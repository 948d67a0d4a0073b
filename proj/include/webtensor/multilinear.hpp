#pragma once

#include <vector>

#include "webtensor/algebra.hpp"

namespace webtensor {

// Dense multilinear map (slot_dim-dimensional arguments)^arity -> codomain.
// Coefficients indexed by ordered basis tuples; value_at(i1..ik) is the image
// of (e_{i1},...,e_{ik}) as a codomain_dim coordinate vector.
struct MultilinearMap {
  int arity = 0;
  int slot_dim = 0;
  int codomain_dim = 0;
  std::vector<Rat> coeffs;  // slot_dim^arity * codomain_dim

  MultilinearMap() = default;
  MultilinearMap(int arity_, int slot_dim_, int codomain_dim_);

  std::size_t tuple_offset(const std::vector<int>& tuple) const;
  Rat& coeff(const std::vector<int>& tuple, int out);
  const Rat& coeff(const std::vector<int>& tuple, int out) const;

  AlgVec value_at(const std::vector<int>& tuple) const;
  void set_value(const std::vector<int>& tuple, const AlgVec& value);
  void add_value(const std::vector<int>& tuple, const Rat& scale, const AlgVec& value);

  // Evaluates on arbitrary slot_dim-dimensional rational arguments.
  AlgVec apply(const std::vector<AlgVec>& args) const;

  bool is_zero() const;
  bool operator==(const MultilinearMap& other) const = default;
};

// Average over all argument permutations (full symmetrization).
MultilinearMap symmetrized(const MultilinearMap& map);

MultilinearMap map_add(const MultilinearMap& a, const MultilinearMap& b);
MultilinearMap map_sub(const MultilinearMap& a, const MultilinearMap& b);
MultilinearMap map_scaled(const Rat& scale, const MultilinearMap& m);

// All differing basis tuples between two maps of identical shape, in
// lexicographic order.
struct MapMismatch {
  std::vector<int> tuple;  // 1-based
  AlgVec left;
  AlgVec right;
};
std::vector<MapMismatch> map_mismatches(const MultilinearMap& a, const MultilinearMap& b);

// Iterates all ordered index tuples of the given arity in lexicographic order.
bool next_tuple(std::vector<int>& tuple, int bound);

}  // namespace webtensor
