#include "webtensor/series.hpp"

#include <stdexcept>

namespace webtensor {

namespace {

const long kFactorial[5] = {1, 1, 2, 6, 24};

void check_signature(const SeriesSignature& sig) {
  if (sig.arity < 1 || sig.arity > 3) throw std::invalid_argument("series arity out of range");
  if (sig.vec_dim < 1) throw std::invalid_argument("series variable dimension must be positive");
  if (sig.coeff_dim < 1) throw std::invalid_argument("series coefficient dimension must be positive");
  if (sig.var_count() > 16)
    throw std::invalid_argument("series exceeds the 16-variable packed-monomial limit");
}

void require_same_sig(const TruncatedSeries& A, const TruncatedSeries& B) {
  if (!(A.sig == B.sig)) throw std::invalid_argument("series signature mismatch");
}

void require_no_constant(const TruncatedSeries& A) {
  if (A.terms.count(0)) throw std::invalid_argument("series has a constant term");
}

// Scalar-coefficient series used internally for substitution.
using ScalarTerms = std::map<MonoKey, Rat>;

bool term_allowed(MonoKey key, const SeriesSignature& sig) {
  if (key_degree(key, sig.var_count()) > kMaxDegree) return false;
  if (sig.has_param && key_exponent(key, sig.arity * sig.vec_dim) > 1) return false;
  return true;
}

ScalarTerms scalar_mul(const ScalarTerms& a, const ScalarTerms& b, const SeriesSignature& sig) {
  ScalarTerms out;
  for (const auto& [ka, va] : a) {
    for (const auto& [kb, vb] : b) {
      MonoKey k = ka + kb;
      if (!term_allowed(k, sig)) continue;
      Rat prod = va * vb;
      auto it = out.find(k);
      if (it == out.end()) {
        out.emplace(k, std::move(prod));
      } else {
        it->second += prod;
        if (it->second.is_zero()) out.erase(it);
      }
    }
  }
  return out;
}

ScalarTerms scalar_one() { return {{MonoKey(0), Rat(1)}}; }

ScalarTerms coordinate_series(const TruncatedSeries& A, int coord) {
  ScalarTerms out;
  for (const auto& [key, vec] : A.terms) {
    const Rat& v = vec[std::size_t(coord)];
    if (!v.is_zero()) out.emplace(key, v);
  }
  return out;
}

}  // namespace

int key_degree(MonoKey key, int var_count) {
  int deg = 0;
  for (int v = 0; v < var_count; ++v) deg += int((key >> (4 * v)) & 0xF);
  return deg;
}

int key_exponent(MonoKey key, int var) { return int((key >> (4 * var)) & 0xF); }

MonoKey key_with_exponent(MonoKey key, int var, int exponent) {
  key &= ~(MonoKey(0xF) << (4 * var));
  key |= MonoKey(exponent) << (4 * var);
  return key;
}

TruncatedSeries TruncatedSeries::zero(const SeriesSignature& sig) {
  check_signature(sig);
  return TruncatedSeries{sig, {}};
}

TruncatedSeries TruncatedSeries::variable(const SeriesSignature& sig, int which) {
  check_signature(sig);
  if (which < 0 || which >= sig.arity) throw std::invalid_argument("variable index out of range");
  if (sig.vec_dim > sig.coeff_dim)
    throw std::invalid_argument("variable space exceeds coefficient space");
  TruncatedSeries out = zero(sig);
  for (int i = 0; i < sig.vec_dim; ++i) {
    MonoKey key = key_with_exponent(0, which * sig.vec_dim + i, 1);
    out.terms.emplace(key, basis_vec(sig.coeff_dim, i));
  }
  return out;
}

TruncatedSeries TruncatedSeries::param(const SeriesSignature& sig, const AlgVec& direction) {
  check_signature(sig);
  if (!sig.has_param) throw std::invalid_argument("signature has no parameter");
  if (int(direction.size()) != sig.coeff_dim)
    throw std::invalid_argument("parameter direction dimension mismatch");
  TruncatedSeries out = zero(sig);
  if (!is_zero_vec(direction))
    out.terms.emplace(key_with_exponent(0, sig.arity * sig.vec_dim, 1), direction);
  return out;
}

void TruncatedSeries::add_term(MonoKey key, const Rat& scale, const AlgVec& coeff) {
  if (int(coeff.size()) != sig.coeff_dim) throw std::invalid_argument("coefficient dimension mismatch");
  if (scale.is_zero() || !term_allowed(key, sig)) return;
  auto it = terms.find(key);
  if (it == terms.end()) {
    AlgVec scaled = vec_scaled(scale, coeff);
    if (!is_zero_vec(scaled)) terms.emplace(key, std::move(scaled));
    return;
  }
  add_scaled(it->second, scale, coeff);
  if (is_zero_vec(it->second)) terms.erase(it);
}

TruncatedSeries series_combine(const Rat& a, const TruncatedSeries& A,
                               const Rat& b, const TruncatedSeries& B) {
  require_same_sig(A, B);
  TruncatedSeries out = TruncatedSeries::zero(A.sig);
  for (const auto& [key, vec] : A.terms) out.add_term(key, a, vec);
  for (const auto& [key, vec] : B.terms) out.add_term(key, b, vec);
  return out;
}

TruncatedSeries series_scaled(const Rat& s, const TruncatedSeries& A) {
  TruncatedSeries out = TruncatedSeries::zero(A.sig);
  if (s.is_zero()) return out;
  for (const auto& [key, vec] : A.terms) out.terms.emplace(key, vec_scaled(s, vec));
  return out;
}

TruncatedSeries series_add(const TruncatedSeries& A, const TruncatedSeries& B) {
  return series_combine(Rat(1), A, Rat(1), B);
}

TruncatedSeries series_sub(const TruncatedSeries& A, const TruncatedSeries& B) {
  return series_combine(Rat(1), A, Rat(-1), B);
}

TruncatedSeries series_bracket(const LieAlgebra& alg, const TruncatedSeries& A,
                               const TruncatedSeries& B) {
  require_same_sig(A, B);
  if (A.sig.coeff_dim != alg.dim)
    throw std::invalid_argument("series coefficients do not live in the algebra");
  TruncatedSeries out = TruncatedSeries::zero(A.sig);
  const int vars = A.sig.var_count();
  for (const auto& [ka, va] : A.terms) {
    const int da = key_degree(ka, vars);
    for (const auto& [kb, vb] : B.terms) {
      if (da + key_degree(kb, vars) > kMaxDegree) continue;
      MonoKey k = ka + kb;
      if (!term_allowed(k, A.sig)) continue;
      out.add_term(k, Rat(1), alg.bracket(va, vb));
    }
  }
  return out;
}

TruncatedSeries series_proj_v(const Split& split, const TruncatedSeries& A) {
  if (A.sig.coeff_dim != split.dim) throw std::invalid_argument("split dimension mismatch");
  TruncatedSeries out = TruncatedSeries::zero(A.sig);
  for (const auto& [key, vec] : A.terms) out.add_term(key, Rat(1), proj_v(split, vec));
  return out;
}

TruncatedSeries series_proj_h(const Split& split, const TruncatedSeries& A) {
  if (A.sig.coeff_dim != split.dim) throw std::invalid_argument("split dimension mismatch");
  TruncatedSeries out = TruncatedSeries::zero(A.sig);
  for (const auto& [key, vec] : A.terms) out.add_term(key, Rat(1), proj_h(split, vec));
  return out;
}

TruncatedSeries bch4(const LieAlgebra& alg, const TruncatedSeries& A,
                     const TruncatedSeries& B) {
  require_same_sig(A, B);
  require_no_constant(A);
  require_no_constant(B);
  TruncatedSeries ab = series_bracket(alg, A, B);           // [a,b]
  TruncatedSeries aab = series_bracket(alg, A, ab);         // [a,[a,b]]
  TruncatedSeries bab = series_bracket(alg, B, ab);         // [b,[a,b]]
  TruncatedSeries out = series_add(A, B);
  out = series_combine(Rat(1), out, make_rat(1, 2), ab);
  out = series_combine(Rat(1), out, make_rat(1, 12), aab);
  // [b,[b,a]] = -[b,[a,b]]
  out = series_combine(Rat(1), out, make_rat(-1, 12), bab);
  out = series_combine(Rat(1), out, make_rat(-1, 48), series_bracket(alg, B, aab));
  out = series_combine(Rat(1), out, make_rat(-1, 48), series_bracket(alg, A, bab));
  return out;
}

TruncatedSeries bch4_inverse(const TruncatedSeries& A) {
  require_no_constant(A);
  return series_scaled(Rat(-1), A);
}

TruncatedSeries substitute(const MultilinearMap& map,
                           const std::vector<TruncatedSeries>& args) {
  if (int(args.size()) != map.arity) throw std::invalid_argument("substitute arity mismatch");
  if (map.arity < 1) throw std::invalid_argument("substitute needs at least one slot");
  const SeriesSignature sig = args[0].sig;
  for (const auto& a : args) {
    if (!(a.sig == sig)) throw std::invalid_argument("series signature mismatch");
    require_no_constant(a);
  }
  if (map.slot_dim > sig.coeff_dim)
    throw std::invalid_argument("map slots exceed series coefficient space");
  if (map.codomain_dim != sig.coeff_dim)
    throw std::invalid_argument("map codomain does not match series coefficients");

  // Coordinate series of each argument, extracted once.
  std::vector<std::vector<ScalarTerms>> coords(args.size());
  for (std::size_t s = 0; s < args.size(); ++s) {
    coords[s].reserve(std::size_t(map.slot_dim));
    for (int i = 0; i < map.slot_dim; ++i) coords[s].push_back(coordinate_series(args[s], i));
  }

  TruncatedSeries out = TruncatedSeries::zero(sig);
  std::vector<int> tuple(static_cast<std::size_t>(map.arity));
  do {
    AlgVec value = map.value_at(tuple);
    if (is_zero_vec(value)) continue;
    ScalarTerms prod = scalar_one();
    for (int s = 0; s < map.arity && !prod.empty(); ++s)
      prod = scalar_mul(prod, coords[std::size_t(s)][std::size_t(tuple[std::size_t(s)])], sig);
    for (const auto& [key, scale] : prod) out.add_term(key, scale, value);
  } while (next_tuple(tuple, map.slot_dim));
  return out;
}

TruncatedSeries apply_two_var(const TruncatedSeries& F, const TruncatedSeries& A,
                              const TruncatedSeries& B) {
  if (F.sig.arity != 2 || F.sig.has_param)
    throw std::invalid_argument("apply_two_var expects a param-free two-variable series");
  require_same_sig(A, B);
  require_no_constant(A);
  require_no_constant(B);
  const SeriesSignature sig = A.sig;
  if (F.sig.coeff_dim != sig.coeff_dim)
    throw std::invalid_argument("series coefficient dimension mismatch");
  if (F.sig.vec_dim > sig.coeff_dim)
    throw std::invalid_argument("variable space exceeds coefficient space");

  const int n = F.sig.vec_dim;
  // pw[v][e] = (coordinate v of the substituted pair)^e, memoized on demand;
  // variables 0..n-1 come from A, n..2n-1 from B.
  std::vector<std::vector<ScalarTerms>> pw(std::size_t(2 * n));
  auto power = [&](int v, int e) -> const ScalarTerms& {
    auto& cache = pw[std::size_t(v)];
    if (cache.empty()) {
      cache.push_back(scalar_one());
      cache.push_back(v < n ? coordinate_series(A, v) : coordinate_series(B, v - n));
    }
    while (int(cache.size()) <= e) cache.push_back(scalar_mul(cache.back(), cache[1], sig));
    return cache[std::size_t(e)];
  };

  TruncatedSeries out = TruncatedSeries::zero(sig);
  for (const auto& [fkey, fvec] : F.terms) {
    ScalarTerms prod = scalar_one();
    for (int v = 0; v < 2 * n && !prod.empty(); ++v) {
      int e = key_exponent(fkey, v);
      if (e) prod = scalar_mul(prod, power(v, e), sig);
    }
    for (const auto& [key, scale] : prod) out.add_term(key, scale, fvec);
  }
  return out;
}

TruncatedSeries param_derivative(const TruncatedSeries& A) {
  if (!A.sig.has_param) throw std::invalid_argument("series has no parameter");
  SeriesSignature sig = A.sig;
  sig.has_param = false;
  TruncatedSeries out = TruncatedSeries::zero(sig);
  const int tvar = A.sig.arity * A.sig.vec_dim;
  for (const auto& [key, vec] : A.terms)
    if (key_exponent(key, tvar) == 1) out.terms.emplace(key_with_exponent(key, tvar, 0), vec);
  return out;
}

TruncatedSeries param_constant(const TruncatedSeries& A) {
  if (!A.sig.has_param) throw std::invalid_argument("series has no parameter");
  SeriesSignature sig = A.sig;
  sig.has_param = false;
  TruncatedSeries out = TruncatedSeries::zero(sig);
  const int tvar = A.sig.arity * A.sig.vec_dim;
  for (const auto& [key, vec] : A.terms)
    if (key_exponent(key, tvar) == 0) out.terms.emplace(key, vec);
  return out;
}

TruncatedSeries degree_slice(const TruncatedSeries& A, int degree) {
  TruncatedSeries out = TruncatedSeries::zero(A.sig);
  for (const auto& [key, vec] : A.terms)
    if (key_degree(key, A.sig.var_count()) == degree) out.terms.emplace(key, vec);
  return out;
}

MultilinearMap coefficient_tensor(const TruncatedSeries& A,
                                  const std::vector<int>& degs, int param_deg) {
  if (int(degs.size()) != A.sig.arity)
    throw std::invalid_argument("one degree per vector variable required");
  int arity = 0;
  for (int d : degs) {
    if (d < 0 || d > kMaxDegree) throw std::invalid_argument("coefficient degree out of range");
    arity += d;
  }
  if (param_deg != 0 && !(A.sig.has_param && param_deg == 1))
    throw std::invalid_argument("parameter degree out of range");

  MultilinearMap out(arity, A.sig.vec_dim, A.sig.coeff_dim);
  std::vector<int> tuple(static_cast<std::size_t>(arity));
  do {
    // Monomial exponents realized by this slot tuple.
    MonoKey key = 0;
    int slot = 0;
    for (int w = 0; w < A.sig.arity; ++w)
      for (int d = 0; d < degs[std::size_t(w)]; ++d, ++slot) {
        int var = w * A.sig.vec_dim + tuple[std::size_t(slot)];
        key = key_with_exponent(key, var, key_exponent(key, var) + 1);
      }
    if (param_deg) key = key_with_exponent(key, A.sig.arity * A.sig.vec_dim, 1);
    auto it = A.terms.find(key);
    if (it == A.terms.end()) continue;
    // Polarization factor: product over variables of alpha! / deg!.
    Rat factor(1);
    for (int w = 0; w < A.sig.arity; ++w) {
      for (int i = 0; i < A.sig.vec_dim; ++i)
        factor *= Rat(kFactorial[key_exponent(key, w * A.sig.vec_dim + i)]);
      factor /= Rat(kFactorial[degs[std::size_t(w)]]);
    }
    out.set_value(tuple, vec_scaled(factor, it->second));
  } while (next_tuple(tuple, A.sig.vec_dim));
  return out;
}

AlgVec series_evaluate(const TruncatedSeries& A, const std::vector<AlgVec>& args) {
  if (int(args.size()) != A.sig.arity) throw std::invalid_argument("argument count mismatch");
  for (const auto& a : args)
    if (int(a.size()) != A.sig.vec_dim) throw std::invalid_argument("argument dimension mismatch");
  AlgVec out(static_cast<std::size_t>(A.sig.coeff_dim));
  const int tvar = A.sig.arity * A.sig.vec_dim;
  for (const auto& [key, vec] : A.terms) {
    if (A.sig.has_param && key_exponent(key, tvar) != 0)
      throw std::invalid_argument("cannot evaluate a series with parameter terms numerically");
    Rat factor(1);
    bool zero = false;
    for (int w = 0; w < A.sig.arity && !zero; ++w)
      for (int i = 0; i < A.sig.vec_dim; ++i) {
        int e = key_exponent(key, w * A.sig.vec_dim + i);
        for (int r = 0; r < e; ++r) {
          const Rat& x = args[std::size_t(w)][std::size_t(i)];
          if (x.is_zero()) { zero = true; break; }
          factor *= x;
        }
        if (zero) break;
      }
    if (!zero) add_scaled(out, factor, vec);
  }
  return out;
}

}  // namespace webtensor
