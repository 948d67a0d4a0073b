#include "webtensor/multilinear.hpp"

#include <algorithm>
#include <stdexcept>

namespace webtensor {

namespace {

std::size_t pow_size(int base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= std::size_t(base);
  return out;
}

}  // namespace

MultilinearMap::MultilinearMap(int arity_, int slot_dim_, int codomain_dim_)
    : arity(arity_), slot_dim(slot_dim_), codomain_dim(codomain_dim_),
      coeffs(pow_size(slot_dim_, arity_) * std::size_t(codomain_dim_)) {
  if (arity_ < 0 || arity_ > 4) throw std::invalid_argument("multilinear arity out of range");
  if (slot_dim_ <= 0 || codomain_dim_ <= 0)
    throw std::invalid_argument("multilinear dimensions must be positive");
}

std::size_t MultilinearMap::tuple_offset(const std::vector<int>& tuple) const {
  if (int(tuple.size()) != arity) throw std::invalid_argument("tuple arity mismatch");
  std::size_t off = 0;
  for (int idx : tuple) {
    if (idx < 0 || idx >= slot_dim) throw std::out_of_range("tuple index out of range");
    off = off * std::size_t(slot_dim) + std::size_t(idx);
  }
  return off * std::size_t(codomain_dim);
}

Rat& MultilinearMap::coeff(const std::vector<int>& tuple, int out) {
  return coeffs[tuple_offset(tuple) + std::size_t(out)];
}

const Rat& MultilinearMap::coeff(const std::vector<int>& tuple, int out) const {
  return coeffs[tuple_offset(tuple) + std::size_t(out)];
}

AlgVec MultilinearMap::value_at(const std::vector<int>& tuple) const {
  std::size_t off = tuple_offset(tuple);
  AlgVec out(static_cast<std::size_t>(codomain_dim));
  for (int k = 0; k < codomain_dim; ++k) out[std::size_t(k)] = coeffs[off + std::size_t(k)];
  return out;
}

void MultilinearMap::set_value(const std::vector<int>& tuple, const AlgVec& value) {
  if (int(value.size()) != codomain_dim) throw std::invalid_argument("codomain dimension mismatch");
  std::size_t off = tuple_offset(tuple);
  for (int k = 0; k < codomain_dim; ++k) coeffs[off + std::size_t(k)] = value[std::size_t(k)];
}

void MultilinearMap::add_value(const std::vector<int>& tuple, const Rat& scale, const AlgVec& value) {
  if (int(value.size()) != codomain_dim) throw std::invalid_argument("codomain dimension mismatch");
  std::size_t off = tuple_offset(tuple);
  for (int k = 0; k < codomain_dim; ++k)
    if (!value[std::size_t(k)].is_zero()) coeffs[off + std::size_t(k)] += scale * value[std::size_t(k)];
}

AlgVec MultilinearMap::apply(const std::vector<AlgVec>& args) const {
  if (int(args.size()) != arity) throw std::invalid_argument("argument count mismatch");
  for (const auto& a : args)
    if (int(a.size()) != slot_dim) throw std::invalid_argument("argument dimension mismatch");
  AlgVec out(static_cast<std::size_t>(codomain_dim));
  std::vector<int> tuple(static_cast<std::size_t>(arity));
  do {
    Rat factor(1);
    bool zero = false;
    for (int s = 0; s < arity; ++s) {
      const Rat& x = args[std::size_t(s)][std::size_t(tuple[std::size_t(s)])];
      if (x.is_zero()) { zero = true; break; }
      factor *= x;
    }
    if (zero) continue;
    std::size_t off = tuple_offset(tuple);
    for (int k = 0; k < codomain_dim; ++k) {
      const Rat& c = coeffs[off + std::size_t(k)];
      if (!c.is_zero()) out[std::size_t(k)] += factor * c;
    }
  } while (next_tuple(tuple, slot_dim));
  return out;
}

bool MultilinearMap::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& r) { return r.is_zero(); });
}

MultilinearMap symmetrized(const MultilinearMap& map) {
  MultilinearMap out(map.arity, map.slot_dim, map.codomain_dim);
  std::vector<int> tuple(static_cast<std::size_t>(map.arity));
  std::vector<int> perm(static_cast<std::size_t>(map.arity));
  do {
    for (int s = 0; s < map.arity; ++s) perm[std::size_t(s)] = s;
    AlgVec sum(static_cast<std::size_t>(map.codomain_dim));
    long count = 0;
    std::sort(perm.begin(), perm.end());
    std::vector<int> permuted(static_cast<std::size_t>(map.arity));
    do {
      for (int s = 0; s < map.arity; ++s)
        permuted[std::size_t(s)] = tuple[std::size_t(perm[std::size_t(s)])];
      add_scaled(sum, Rat(1), map.value_at(permuted));
      ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.set_value(tuple, vec_scaled(Rat(1) / Rat(count), sum));
  } while (next_tuple(tuple, map.slot_dim));
  return out;
}

MultilinearMap map_add(const MultilinearMap& a, const MultilinearMap& b) {
  if (a.arity != b.arity || a.slot_dim != b.slot_dim || a.codomain_dim != b.codomain_dim)
    throw std::invalid_argument("map shape mismatch");
  MultilinearMap out = a;
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] += b.coeffs[i];
  return out;
}

MultilinearMap map_sub(const MultilinearMap& a, const MultilinearMap& b) {
  return map_add(a, map_scaled(Rat(-1), b));
}

MultilinearMap map_scaled(const Rat& scale, const MultilinearMap& m) {
  MultilinearMap out = m;
  for (auto& c : out.coeffs) c *= scale;
  return out;
}

std::vector<MapMismatch> map_mismatches(const MultilinearMap& a, const MultilinearMap& b) {
  if (a.arity != b.arity || a.slot_dim != b.slot_dim || a.codomain_dim != b.codomain_dim)
    throw std::invalid_argument("map shape mismatch");
  std::vector<MapMismatch> out;
  std::vector<int> tuple(static_cast<std::size_t>(a.arity));
  do {
    AlgVec va = a.value_at(tuple);
    AlgVec vb = b.value_at(tuple);
    if (va != vb) {
      std::vector<int> witness = tuple;
      for (int& i : witness) ++i;
      out.push_back({witness, va, vb});
    }
  } while (next_tuple(tuple, a.slot_dim));
  return out;
}

bool next_tuple(std::vector<int>& tuple, int bound) {
  for (std::size_t pos = tuple.size(); pos-- > 0;) {
    if (++tuple[pos] < bound) return true;
    tuple[pos] = 0;
  }
  return false;
}

}  // namespace webtensor
