#include "webtensor/tensors.hpp"

namespace webtensor {

namespace {

const Rat kHalf = Rat(1) / Rat(2);
const Rat kQuarter = Rat(1) / Rat(4);

// Shared loop body: fills an (arity, n, n) map tuple by tuple.
template <typename Fn>
MultilinearMap build_map(int arity, int n, Fn&& entry) {
  MultilinearMap out(arity, n, n);
  std::vector<int> tuple(static_cast<std::size_t>(arity), 0);
  do {
    out.set_value(tuple, entry(tuple));
  } while (next_tuple(tuple, n));
  return out;
}

}  // namespace

MultilinearMap restrict_to_v(const Split& split, const MultilinearMap& map) {
  MultilinearMap out(map.arity, map.slot_dim, split.v_dim);
  std::vector<int> tuple(static_cast<std::size_t>(map.arity), 0);
  do {
    out.set_value(tuple, truncate_to(split.v_dim, map.value_at(tuple)));
  } while (next_tuple(tuple, map.slot_dim));
  return out;
}

ExpansionCoefficients extract_coefficients(const LoopExpansion& exp) {
  ExpansionCoefficients c;
  c.K = coefficient_tensor(exp.z_series, {1, 1});
  c.L = coefficient_tensor(exp.z_series, {2, 1});
  c.M = coefficient_tensor(exp.z_series, {1, 2});
  c.P = coefficient_tensor(exp.z_series, {3, 1});
  c.Q = coefficient_tensor(exp.z_series, {2, 2});
  c.U = coefficient_tensor(exp.z_series, {1, 3});
  c.E = coefficient_tensor(exp.h_series, {2, 1});
  c.F = coefficient_tensor(exp.h_series, {1, 2});
  return c;
}

MultilinearMap tensor_a_generic(const LoopExpansion& exp, const Split& split) {
  MultilinearMap K = coefficient_tensor(exp.z_series, {1, 1});
  return restrict_to_v(split, map_scaled(Rat(-1), K));
}

MultilinearMap tensor_a_closed(const LieAlgebra& alg, const Split& split) {
  const int n = split.v_dim;
  const int N = alg.dim;
  return build_map(2, n, [&](const std::vector<int>& t) {
    AlgVec xy = alg.bracket(basis_vec(N, t[0]), basis_vec(N, t[1]));
    return truncate_to(n, vec_scaled(-kHalf, proj_v(split, xy)));
  });
}

MultilinearMap tensor_B_generic(const LoopExpansion& exp, const Split& split) {
  const int n = split.v_dim;
  ExpansionCoefficients co = extract_coefficients(exp);
  MultilinearMap K = restrict_to_v(split, co.K);
  MultilinearMap L = restrict_to_v(split, co.L);
  MultilinearMap M = restrict_to_v(split, co.M);
  return build_map(3, n, [&](const std::vector<int>& t) {
    AlgVec val = vec_scaled(Rat(2), L.value_at(t));
    add_scaled(val, Rat(-2), M.value_at(t));
    add_scaled(val, Rat(-1), K.apply({basis_vec(n, t[0]), K.value_at({t[1], t[2]})}));
    add_scaled(val, Rat(1), K.apply({K.value_at({t[0], t[1]}), basis_vec(n, t[2])}));
    return val;
  });
}

MultilinearMap tensor_b_generic(const LoopExpansion& exp, const Split& split) {
  MultilinearMap B = tensor_B_generic(exp, split);
  return build_map(3, split.v_dim, [&](const std::vector<int>& t) {
    return vec_neg(B.value_at({t[1], t[0], t[2]}));
  });
}

namespace {

MultilinearMap b_closed_impl(const LieAlgebra& alg, const Split& split,
                             const SectionJet& section, const Rat& middle_sign) {
  const int n = split.v_dim;
  const int N = alg.dim;
  return build_map(3, n, [&](const std::vector<int>& t) {
    AlgVec x = basis_vec(N, t[0]);
    AlgVec y = basis_vec(N, t[1]);
    AlgVec z = basis_vec(N, t[2]);
    AlgVec xy = alg.bracket(x, y);
    AlgVec val = vec_scaled(-kHalf, proj_v(split, alg.bracket(xy, z)));
    add_scaled(val, middle_sign * kHalf, proj_v(split, alg.bracket(proj_v(split, xy), z)));
    add_scaled(val, Rat(-2), proj_v(split, alg.bracket(section.R.value_at({t[0], t[1]}), z)));
    return truncate_to(n, val);
  });
}

}  // namespace

MultilinearMap tensor_b_closed(const LieAlgebra& alg, const Split& split,
                               const SectionJet& section) {
  return b_closed_impl(alg, split, section, Rat(1));
}

MultilinearMap tensor_b_closed_variant(const LieAlgebra& alg, const Split& split,
                                       const SectionJet& section) {
  return b_closed_impl(alg, split, section, Rat(-1));
}

MultilinearMap tensor_c_formula(const LoopExpansion& exp, const Split& split) {
  const int n = split.v_dim;
  ExpansionCoefficients co = extract_coefficients(exp);
  MultilinearMap a = tensor_a_generic(exp, split);
  MultilinearMap b = tensor_b_generic(exp, split);
  MultilinearMap L = restrict_to_v(split, co.L);
  MultilinearMap P = restrict_to_v(split, co.P);
  MultilinearMap Q = restrict_to_v(split, co.Q);
  return build_map(4, n, [&](const std::vector<int>& t) {
    const int i = t[0], j = t[1], k = t[2], l = t[3];
    AlgVec ei = basis_vec(n, i), ej = basis_vec(n, j);
    AlgVec ek = basis_vec(n, k), el = basis_vec(n, l);
    AlgVec val = vec_scaled(Rat(4), Q.value_at({j, l, i, k}));
    add_scaled(val, Rat(-6), P.value_at({j, l, i, k}));
    add_scaled(val, Rat(1), a.apply({el, b.value_at({i, j, k})}));
    add_scaled(val, Rat(1), a.apply({ej, b.value_at({i, l, k})}));
    add_scaled(val, Rat(-1), b.apply({ei, a.value_at({l, j}), ek}));
    add_scaled(val, Rat(2), a.apply({L.value_at({j, l, i}), ek}));
    add_scaled(val, Rat(-2), L.apply({a.value_at({i, j}), el, ek}));
    add_scaled(val, Rat(-2), L.apply({ej, a.value_at({i, l}), ek}));
    add_scaled(val, Rat(-2), L.apply({ej, el, a.value_at({i, k})}));
    return val;
  });
}

MultilinearMap tensor_d_formula(const LoopExpansion& exp, const Split& split) {
  const int n = split.v_dim;
  ExpansionCoefficients co = extract_coefficients(exp);
  MultilinearMap a = tensor_a_generic(exp, split);
  MultilinearMap b = tensor_b_generic(exp, split);
  MultilinearMap M = restrict_to_v(split, co.M);
  MultilinearMap P = restrict_to_v(split, co.P);
  MultilinearMap Q = restrict_to_v(split, co.Q);
  return build_map(4, n, [&](const std::vector<int>& t) {
    const int i = t[0], j = t[1], k = t[2], l = t[3];
    AlgVec ei = basis_vec(n, i), ej = basis_vec(n, j);
    AlgVec ek = basis_vec(n, k), el = basis_vec(n, l);
    AlgVec val = vec_scaled(Rat(4), Q.value_at({j, i, k, l}));
    add_scaled(val, Rat(-6), P.value_at({j, i, k, l}));
    add_scaled(val, Rat(-1), a.apply({b.value_at({i, j, k}), el}));
    add_scaled(val, Rat(-1), a.apply({b.value_at({i, j, l}), ek}));
    add_scaled(val, Rat(1), b.apply({ei, ej, a.value_at({k, l})}));
    add_scaled(val, Rat(2), a.apply({ej, M.value_at({i, k, l})}));
    add_scaled(val, Rat(-2), M.apply({a.value_at({j, i}), ek, el}));
    add_scaled(val, Rat(-2), M.apply({ej, a.value_at({k, i}), el}));
    add_scaled(val, Rat(-2), M.apply({ej, ek, a.value_at({l, i})}));
    return val;
  });
}

MultilinearMap tensor_d_formula_variant(const LoopExpansion& exp, const Split& split) {
  const int n = split.v_dim;
  ExpansionCoefficients co = extract_coefficients(exp);
  MultilinearMap a = tensor_a_generic(exp, split);
  MultilinearMap b = tensor_b_generic(exp, split);
  MultilinearMap M = restrict_to_v(split, co.M);
  MultilinearMap Q = restrict_to_v(split, co.Q);
  MultilinearMap U = restrict_to_v(split, co.U);
  return build_map(4, n, [&](const std::vector<int>& t) {
    const int i = t[0], j = t[1], k = t[2], l = t[3];
    AlgVec ei = basis_vec(n, i), ej = basis_vec(n, j);
    AlgVec ek = basis_vec(n, k), el = basis_vec(n, l);
    AlgVec val = vec_scaled(Rat(4), Q.value_at({j, i, k, l}));
    add_scaled(val, Rat(-6), U.value_at({j, i, k, l}));
    add_scaled(val, Rat(-1), a.apply({b.value_at({i, j, k}), el}));
    add_scaled(val, Rat(-1), a.apply({b.value_at({i, j, l}), ek}));
    add_scaled(val, Rat(1), b.apply({ei, ej, a.value_at({k, l})}));
    add_scaled(val, Rat(2), a.apply({ej, M.value_at({i, k, l})}));
    add_scaled(val, Rat(-2), M.apply({a.value_at({j, i}), ek, el}));
    add_scaled(val, Rat(-2), M.apply({ej, a.value_at({k, i}), el}));
    add_scaled(val, Rat(-2), M.apply({ej, ek, a.value_at({l, i})}));
    return vec_neg(val);
  });
}

namespace {

// First-order change of the curvature tensor of a perturbed loop, from the
// t-slices of its composition series via the product rule on the K nesting.
MultilinearMap curvature_derivative_slice(const TruncatedSeries& D, const Split& split) {
  const int n = split.v_dim;
  MultilinearMap K0 = restrict_to_v(split, coefficient_tensor(D, {1, 1}, 0));
  MultilinearMap K1 = restrict_to_v(split, coefficient_tensor(D, {1, 1}, 1));
  MultilinearMap L1 = restrict_to_v(split, coefficient_tensor(D, {2, 1}, 1));
  MultilinearMap M1 = restrict_to_v(split, coefficient_tensor(D, {1, 2}, 1));
  return build_map(3, n, [&](const std::vector<int>& t) {
    // b1(x,y,z) = -B1(y,x,z)
    const int p = t[1], q = t[0], r = t[2];
    AlgVec ep = basis_vec(n, p), er = basis_vec(n, r);
    AlgVec val = vec_scaled(Rat(2), L1.value_at({p, q, r}));
    add_scaled(val, Rat(-2), M1.value_at({p, q, r}));
    add_scaled(val, Rat(-1), K1.apply({ep, K0.value_at({q, r})}));
    add_scaled(val, Rat(-1), K0.apply({ep, K1.value_at({q, r})}));
    add_scaled(val, Rat(1), K1.apply({K0.value_at({p, q}), er}));
    add_scaled(val, Rat(1), K0.apply({K1.value_at({p, q}), er}));
    return vec_neg(val);
  });
}

template <typename DerivedFn>
MultilinearMap curvature_derivative(const LoopExpansion& exp, const Split& split,
                                    DerivedFn&& derived) {
  const int n = split.v_dim;
  MultilinearMap out(4, n, n);
  for (int l = 0; l < n; ++l) {
    TruncatedSeries D = derived(exp, split, basis_vec(n, l));
    MultilinearMap b1 = curvature_derivative_slice(D, split);
    std::vector<int> t(3, 0);
    do {
      out.set_value({t[0], t[1], t[2], l}, b1.value_at(t));
    } while (next_tuple(t, n));
  }
  return out;
}

// The perturbed chart is not normalized, so the quadratic coefficient picks
// up a symmetric part; the torsion is its alternation.
template <typename DerivedFn>
MultilinearMap torsion_derivative(const LoopExpansion& exp, const Split& split,
                                  DerivedFn&& derived) {
  const int n = split.v_dim;
  MultilinearMap out(3, n, n);
  for (int l = 0; l < n; ++l) {
    TruncatedSeries D = derived(exp, split, basis_vec(n, l));
    MultilinearMap K1 = restrict_to_v(split, coefficient_tensor(D, {1, 1}, 1));
    std::vector<int> t(2, 0);
    do {
      AlgVec alt = vec_sub(K1.value_at(t), K1.value_at({t[1], t[0]}));
      out.set_value({t[0], t[1], l}, vec_scaled(-kHalf, alt));
    } while (next_tuple(t, n));
  }
  return out;
}

}  // namespace

MultilinearMap tensor_c_derivative(const LoopExpansion& exp, const Split& split) {
  return curvature_derivative(exp, split, derived_loop_u);
}

MultilinearMap tensor_d_derivative(const LoopExpansion& exp, const Split& split) {
  return curvature_derivative(exp, split, derived_loop_v);
}

MultilinearMap tensor_d_closed(const LieAlgebra& alg, const Split& split,
                               const SectionJet& section) {
  const int n = split.v_dim;
  const int N = alg.dim;
  auto Pv = [&](const AlgVec& v) { return proj_v(split, v); };
  auto br = [&](const AlgVec& x, const AlgVec& y) { return alg.bracket(x, y); };
  return build_map(4, n, [&](const std::vector<int>& t) {
    AlgVec xi = basis_vec(N, t[0]);
    AlgVec eta = basis_vec(N, t[1]);
    AlgVec zeta = basis_vec(N, t[2]);
    AlgVec tau = basis_vec(N, t[3]);
    AlgVec xe = br(xi, eta);
    AlgVec pxe = Pv(xe);
    AlgVec rxe = section.R.value_at({t[0], t[1]});
    AlgVec val = vec_scaled(kHalf, Pv(br(tau, br(xe, zeta))));
    add_scaled(val, -kHalf, Pv(br(tau, Pv(br(xe, zeta)))));
    add_scaled(val, -kHalf, Pv(br(tau, br(pxe, zeta))));
    add_scaled(val, kHalf, Pv(br(tau, Pv(br(pxe, zeta)))));
    add_scaled(val, -kHalf, Pv(br(Pv(br(tau, xe)), zeta)));
    add_scaled(val, kHalf, Pv(br(Pv(br(tau, pxe)), zeta)));
    add_scaled(val, Rat(2), Pv(br(tau, br(rxe, zeta))));
    add_scaled(val, Rat(-2), Pv(br(tau, Pv(br(rxe, zeta)))));
    add_scaled(val, Rat(-2), Pv(br(Pv(br(tau, rxe)), zeta)));
    return truncate_to(n, val);
  });
}

MultilinearMap nabla2_a_closed(const LieAlgebra& alg, const Split& split) {
  const int n = split.v_dim;
  const int N = alg.dim;
  return build_map(3, n, [&](const std::vector<int>& t) {
    AlgVec xe = alg.bracket(basis_vec(N, t[0]), basis_vec(N, t[1]));
    AlgVec zeta = basis_vec(N, t[2]);
    AlgVec val = vec_scaled(-kHalf, proj_v(split, alg.bracket(xe, zeta)));
    add_scaled(val, kHalf, proj_v(split, alg.bracket(proj_v(split, xe), zeta)));
    return truncate_to(n, val);
  });
}

MultilinearMap nabla1_a_closed(const LieAlgebra& alg, const Split& split,
                               const SectionJet& section) {
  const int n = split.v_dim;
  const int N = alg.dim;
  auto Pv = [&](const AlgVec& v) { return proj_v(split, v); };
  auto br = [&](const AlgVec& x, const AlgVec& y) { return alg.bracket(x, y); };
  return build_map(3, n, [&](const std::vector<int>& t) {
    AlgVec xi = basis_vec(N, t[0]);
    AlgVec eta = basis_vec(N, t[1]);
    AlgVec zeta = basis_vec(N, t[2]);
    AlgVec xz = br(xi, zeta);
    AlgVec yz = br(eta, zeta);
    AlgVec val = vec_scaled(-kQuarter, Pv(br(xz, eta)));
    add_scaled(val, kQuarter, Pv(br(Pv(xz), eta)));
    add_scaled(val, Rat(-1), Pv(br(section.R.value_at({t[0], t[2]}), eta)));
    add_scaled(val, kQuarter, Pv(br(yz, xi)));
    add_scaled(val, -kQuarter, Pv(br(Pv(yz), xi)));
    add_scaled(val, Rat(1), Pv(br(section.R.value_at({t[1], t[2]}), xi)));
    return truncate_to(n, val);
  });
}

MultilinearMap nabla1_from_b(const MultilinearMap& b) {
  return build_map(3, b.slot_dim, [&](const std::vector<int>& t) {
    AlgVec val = vec_sub(b.value_at({t[0], t[2], t[1]}), b.value_at({t[1], t[2], t[0]}));
    return vec_scaled(kHalf, val);
  });
}

MultilinearMap nabla2_from_b(const MultilinearMap& b) {
  return build_map(3, b.slot_dim, [&](const std::vector<int>& t) {
    AlgVec val = vec_sub(b.value_at({t[0], t[1], t[2]}), b.value_at({t[1], t[0], t[2]}));
    return vec_scaled(kHalf, val);
  });
}

MultilinearMap nabla1_a_derivative(const LoopExpansion& exp, const Split& split) {
  return torsion_derivative(exp, split, derived_loop_u);
}

MultilinearMap nabla2_a_derivative(const LoopExpansion& exp, const Split& split) {
  return torsion_derivative(exp, split, derived_loop_v);
}

std::optional<TensorWitness> check_d_alternation(const MultilinearMap& d,
                                                 const MultilinearMap& b,
                                                 const MultilinearMap& a) {
  const int n = d.slot_dim;
  std::vector<int> t(4, 0);
  do {
    AlgVec val = vec_sub(d.value_at(t), d.value_at({t[0], t[1], t[3], t[2]}));
    val = vec_scaled(kHalf, val);
    add_scaled(val, Rat(1),
               b.apply({basis_vec(n, t[0]), basis_vec(n, t[1]), a.value_at({t[2], t[3]})}));
    if (!is_zero_vec(val)) {
      return TensorWitness{{t[0] + 1, t[1] + 1, t[2] + 1, t[3] + 1}, val};
    }
  } while (next_tuple(t, n));
  return std::nullopt;
}

AlgVec hexagonal_r_sum(const LieAlgebra& alg, const Split& split,
                       const SectionJet& section, int i, int j, int k) {
  const int N = alg.dim;
  auto term = [&](int p, int q, int r) {
    return proj_v(split, alg.bracket(section.R.value_at({p, q}), basis_vec(N, r)));
  };
  AlgVec sum = term(i, j, k);
  add_scaled(sum, Rat(1), term(j, k, i));
  add_scaled(sum, Rat(1), term(k, i, j));
  return truncate_to(split.v_dim, sum);
}

AlgVec hexagonal_b_avg(const MultilinearMap& b, int i, int j, int k) {
  AlgVec sum = b.value_at({i, j, k});
  add_scaled(sum, Rat(1), b.value_at({j, k, i}));
  add_scaled(sum, Rat(1), b.value_at({k, i, j}));
  return vec_scaled(Rat(1) / Rat(3), sum);
}

HexagonalityVerdict hexagonality(const LieAlgebra& alg, const Split& split,
                                 const SectionJet& section, const MultilinearMap& b) {
  const int n = split.v_dim;
  HexagonalityVerdict verdict;
  std::vector<int> t(3, 0);
  do {
    AlgVec rsum = hexagonal_r_sum(alg, split, section, t[0], t[1], t[2]);
    AlgVec bavg = hexagonal_b_avg(b, t[0], t[1], t[2]);
    const bool r_ok = is_zero_vec(rsum);
    const bool b_ok = is_zero_vec(bavg);
    std::vector<int> shown{t[0] + 1, t[1] + 1, t[2] + 1};
    if (!r_ok && !verdict.r_witness) verdict.r_witness = TensorWitness{shown, rsum};
    if (!b_ok && !verdict.b_witness) verdict.b_witness = TensorWitness{shown, bavg};
    if (r_ok != b_ok) verdict.disagreements.push_back(shown);
  } while (next_tuple(t, n));
  verdict.hexagonal = !verdict.r_witness && !verdict.b_witness;
  return verdict;
}

std::optional<TensorWitness> check_hexagonal_d(const LieAlgebra& alg, const Split& split,
                                               const SectionJet& section) {
  const int n = split.v_dim;
  const int N = alg.dim;
  auto term = [&](int p, int q, int r, const AlgVec& tau) {
    AlgVec rpq = section.R.value_at({p, q});
    AlgVec val = proj_v(split, alg.bracket(tau, alg.bracket(rpq, basis_vec(N, r))));
    add_scaled(val, Rat(-1),
               proj_v(split, alg.bracket(proj_v(split, alg.bracket(tau, rpq)), basis_vec(N, r))));
    return val;
  };
  std::vector<int> t(4, 0);
  do {
    AlgVec tau = basis_vec(N, t[3]);
    AlgVec sum = term(t[0], t[1], t[2], tau);
    add_scaled(sum, Rat(1), term(t[1], t[2], t[0], tau));
    add_scaled(sum, Rat(1), term(t[2], t[0], t[1], tau));
    if (!is_zero_vec(sum)) {
      return TensorWitness{{t[0] + 1, t[1] + 1, t[2] + 1, t[3] + 1},
                           truncate_to(split.v_dim, sum)};
    }
  } while (next_tuple(t, n));
  return std::nullopt;
}

WebTensorSet build_web_tensors(const LieAlgebra& alg, const Split& split,
                               const SectionJet& section, const LoopExpansion& exp) {
  WebTensorSet set;
  set.a = tensor_a_generic(exp, split);
  set.B = tensor_B_generic(exp, split);
  set.b = tensor_b_generic(exp, split);
  set.c = tensor_c_derivative(exp, split);
  set.d = tensor_d_derivative(exp, split);
  set.nabla1_a = nabla1_a_closed(alg, split, section);
  set.nabla2_a = nabla2_a_closed(alg, split);
  return set;
}

}  // namespace webtensor
