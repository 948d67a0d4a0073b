#include "webtensor/algebra.hpp"

#include <stdexcept>

namespace webtensor {

AlgVec zero_vec(int dim) { return AlgVec(static_cast<std::size_t>(dim)); }

AlgVec basis_vec(int dim, int i) {
  AlgVec v(static_cast<std::size_t>(dim));
  v[std::size_t(i)] = 1;
  return v;
}

bool is_zero_vec(const AlgVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

AlgVec& add_scaled(AlgVec& target, const Rat& scale, const AlgVec& v) {
  if (target.size() != v.size()) throw std::invalid_argument("vector dimension mismatch");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) target[i] += scale * v[i];
  return target;
}

AlgVec vec_add(const AlgVec& a, const AlgVec& b) {
  AlgVec out = a;
  add_scaled(out, Rat(1), b);
  return out;
}

AlgVec vec_sub(const AlgVec& a, const AlgVec& b) {
  AlgVec out = a;
  add_scaled(out, Rat(-1), b);
  return out;
}

AlgVec vec_scaled(const Rat& scale, const AlgVec& v) {
  AlgVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out[i] = scale * v[i];
  return out;
}

AlgVec vec_neg(const AlgVec& v) { return vec_scaled(Rat(-1), v); }

std::string vec_to_string(const AlgVec& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += rat_to_string(v[i]);
  }
  out += ")";
  return out;
}

LieAlgebra::LieAlgebra(int dim_) : dim(dim_), c(std::size_t(dim_) * dim_ * dim_) {
  if (dim_ <= 0) throw std::invalid_argument("algebra dimension must be positive");
}

void LieAlgebra::set_bracket(int i, int j, int k, const Rat& value) {
  structure(i, j, k) = value;
  structure(j, i, k) = -value;
}

AlgVec LieAlgebra::bracket(const AlgVec& x, const AlgVec& y) const {
  if (int(x.size()) != dim || int(y.size()) != dim)
    throw std::invalid_argument("bracket argument dimension mismatch");
  AlgVec out(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    if (x[std::size_t(i)].is_zero()) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[std::size_t(j)].is_zero()) continue;
      Rat xy = x[std::size_t(i)] * y[std::size_t(j)];
      for (int k = 0; k < dim; ++k) {
        const Rat& s = structure(i, j, k);
        if (!s.is_zero()) out[std::size_t(k)] += xy * s;
      }
    }
  }
  return out;
}

AlgVec proj_v(const Split& split, const AlgVec& x) {
  AlgVec out = x;
  for (int i = split.v_dim; i < split.dim; ++i) out[std::size_t(i)] = 0;
  return out;
}

AlgVec proj_h(const Split& split, const AlgVec& x) {
  AlgVec out = x;
  for (int i = 0; i < split.v_dim; ++i) out[std::size_t(i)] = 0;
  return out;
}

ValidationReport validate_algebra(const LieAlgebra& alg) {
  ValidationReport report;
  const int n = alg.dim;

  for (int i = 0; i < n && report.ok; ++i) {
    for (int j = i; j < n && report.ok; ++j) {
      for (int k = 0; k < n; ++k) {
        if (alg.structure(i, j, k) + alg.structure(j, i, k) != 0) {
          report.ok = false;
          report.issues.push_back({"antisymmetry",
                                   {i + 1, j + 1, k + 1},
                                   "c[i][j][k] + c[j][i][k] != 0"});
          break;
        }
      }
    }
  }
  if (!report.ok) return report;

  for (int i = 0; i < n; ++i) {
    AlgVec ei = basis_vec(n, i);
    for (int j = i + 1; j < n; ++j) {
      AlgVec ej = basis_vec(n, j);
      AlgVec bij = alg.bracket(ei, ej);
      for (int k = j + 1; k < n; ++k) {
        AlgVec ek = basis_vec(n, k);
        AlgVec total = alg.bracket(bij, ek);
        add_scaled(total, Rat(1), alg.bracket(alg.bracket(ej, ek), ei));
        add_scaled(total, Rat(1), alg.bracket(alg.bracket(ek, ei), ej));
        if (!is_zero_vec(total)) {
          report.ok = false;
          report.issues.push_back({"jacobi",
                                   {i + 1, j + 1, k + 1},
                                   "Jacobi sum = " + vec_to_string(total)});
          return report;
        }
      }
    }
  }
  return report;
}

ValidationReport validate_split(const LieAlgebra& alg, const Split& split) {
  ValidationReport report = validate_algebra(alg);
  if (split.dim != alg.dim) {
    report.ok = false;
    report.issues.push_back({"dimension", {}, "split dimension differs from algebra dimension"});
    return report;
  }
  if (split.v_dim < 1 || split.v_dim > split.dim) {
    report.ok = false;
    report.issues.push_back({"dimension", {}, "v_dim out of range"});
    return report;
  }
  for (int i = split.v_dim; i < split.dim; ++i) {
    for (int j = i + 1; j < split.dim; ++j) {
      AlgVec b = alg.bracket(basis_vec(alg.dim, i), basis_vec(alg.dim, j));
      if (!is_zero_vec(proj_v(split, b))) {
        report.ok = false;
        report.issues.push_back({"split",
                                 {i + 1, j + 1},
                                 "stabilizer bracket leaves the stabilizer: " + vec_to_string(b)});
        return report;
      }
    }
  }
  return report;
}

}  // namespace webtensor
