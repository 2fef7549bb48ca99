#include "singhh/groebner.hpp"

#include <algorithm>

#include "singhh/errors.hpp"

namespace singhh {

bool staircase_is_finite(const GroebnerBasis& gb, int* witness_var) {
  // a constant generator means the unit ideal: the staircase is empty
  for (const MultiPoly& g : gb.gens)
    if (exps_degree(g.leading_term(gb.order).first) == 0) return true;
  for (int v = 0; v < gb.nvars; ++v) {
    bool pure = false;
    for (const MultiPoly& g : gb.gens) {
      Exps l = g.leading_term(gb.order).first;
      bool only_v = l[static_cast<size_t>(v)] > 0;
      for (int w = 0; w < gb.nvars && only_v; ++w)
        if (w != v && l[static_cast<size_t>(w)] > 0) only_v = false;
      if (only_v) {
        pure = true;
        break;
      }
    }
    if (!pure) {
      if (witness_var) *witness_var = v;
      return false;
    }
  }
  return true;
}

std::vector<Exps> staircase_monomials(const GroebnerBasis& gb) {
  int witness = -1;
  if (!staircase_is_finite(gb, &witness))
    fail_math("staircase is infinite in variable index " + std::to_string(witness));

  std::vector<Exps> leads;
  for (const MultiPoly& g : gb.gens) leads.push_back(g.leading_term(gb.order).first);

  Exps bound(static_cast<size_t>(gb.nvars), 0);
  for (int v = 0; v < gb.nvars; ++v) {
    unsigned best = 0;
    for (const Exps& l : leads) {
      bool only_v = l[static_cast<size_t>(v)] > 0;
      for (int w = 0; w < gb.nvars && only_v; ++w)
        if (w != v && l[static_cast<size_t>(w)] > 0) only_v = false;
      if (only_v && (best == 0 || l[static_cast<size_t>(v)] < best)) best = l[static_cast<size_t>(v)];
    }
    bound[static_cast<size_t>(v)] = best;  // staircase exponents in v are < best
  }

  std::vector<Exps> out;
  Exps cur(static_cast<size_t>(gb.nvars), 0);
  auto dividable = [&](const Exps& m) {
    for (const Exps& l : leads)
      if (exps_divides(l, m)) return true;
    return false;
  };
  while (true) {
    if (!dividable(cur)) out.push_back(cur);
    int v = 0;
    while (v < gb.nvars) {
      if (++cur[static_cast<size_t>(v)] < bound[static_cast<size_t>(v)]) break;
      cur[static_cast<size_t>(v)] = 0;
      ++v;
    }
    if (v == gb.nvars) break;
  }
  std::sort(out.begin(), out.end(), [](const Exps& a, const Exps& b) {
    unsigned da = exps_degree(a), db = exps_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  });
  return out;
}

DenseVec CommAlgebra::mul_coords(const DenseVec& a, const DenseVec& b) const {
  if (static_cast<int>(a.size()) != dim || static_cast<int>(b.size()) != dim)
    fail_input("coordinate vector has wrong length");
  DenseVec out(static_cast<size_t>(dim), Scalar(0));
  for (int i = 0; i < dim; ++i) {
    if (field.is_zero(a[static_cast<size_t>(i)])) continue;
    for (int j = 0; j < dim; ++j) {
      if (field.is_zero(b[static_cast<size_t>(j)])) continue;
      Scalar c = field.mul(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)]);
      for (const auto& [k, x] : table[static_cast<size_t>(i)][static_cast<size_t>(j)])
        out[static_cast<size_t>(k)] = field.add(out[static_cast<size_t>(k)], field.mul(c, x));
    }
  }
  return out;
}

Matrix CommAlgebra::mult_operator(const DenseVec& a) const {
  Matrix m(field, dim, dim);
  for (int j = 0; j < dim; ++j) {
    DenseVec ej(static_cast<size_t>(dim), Scalar(0));
    ej[static_cast<size_t>(j)] = field.one();
    DenseVec col = mul_coords(a, ej);
    for (int i = 0; i < dim; ++i)
      if (!field.is_zero(col[static_cast<size_t>(i)])) m.set(i, j, col[static_cast<size_t>(i)]);
  }
  return m;
}

DenseVec CommAlgebra::element_coords(const MultiPoly& f) const {
  MultiPoly nf = normal_form(f, gb);
  DenseVec out(static_cast<size_t>(dim), Scalar(0));
  for (const auto& [m, c] : nf.terms()) {
    bool found = false;
    for (int k = 0; k < dim && !found; ++k) {
      if (basis[static_cast<size_t>(k)] == m) {
        out[static_cast<size_t>(k)] = c;
        found = true;
      }
    }
    if (!found) fail_math("normal form fell outside the staircase basis");
  }
  return out;
}

std::string CommAlgebra::element_to_string(const DenseVec& a) const {
  MultiPoly p(field, nvars);
  for (int k = 0; k < dim; ++k)
    p = p.add(MultiPoly::monomial(field, basis[static_cast<size_t>(k)], a[static_cast<size_t>(k)]));
  return p.to_string(var_names);
}

std::optional<CommAlgebra> quotient_algebra(const GroebnerBasis& gb,
                                            const std::vector<std::string>& var_names,
                                            InfiniteStaircase* why) {
  if (static_cast<int>(var_names.size()) != gb.nvars && !(gb.gens.empty() && var_names.empty()))
    fail_input("variable name list has wrong length");
  int witness = -1;
  if (!staircase_is_finite(gb, &witness)) {
    if (why) why->witness_var = witness;
    return std::nullopt;
  }

  CommAlgebra A;
  A.field = gb.field;
  A.nvars = gb.nvars;
  A.var_names = var_names;
  A.gb = gb;
  A.basis = staircase_monomials(gb);
  A.dim = static_cast<int>(A.basis.size());

  auto coords_of = [&](const MultiPoly& f) {
    MultiPoly nf = normal_form(f, gb);
    SparseVec out;
    for (const auto& [m, c] : nf.terms()) {
      int idx = -1;
      for (int k = 0; k < A.dim; ++k)
        if (A.basis[static_cast<size_t>(k)] == m) {
          idx = k;
          break;
        }
      if (idx < 0) fail_math("normal form fell outside the staircase basis");
      out.emplace_back(idx, c);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  };

  A.table.assign(static_cast<size_t>(A.dim), std::vector<SparseVec>(static_cast<size_t>(A.dim)));
  for (int i = 0; i < A.dim; ++i)
    for (int j = i; j < A.dim; ++j) {
      MultiPoly prod = MultiPoly::monomial(gb.field, exps_mul(A.basis[static_cast<size_t>(i)], A.basis[static_cast<size_t>(j)]), gb.field.one());
      SparseVec c = coords_of(prod);
      A.table[static_cast<size_t>(i)][static_cast<size_t>(j)] = c;
      A.table[static_cast<size_t>(j)][static_cast<size_t>(i)] = std::move(c);
    }

  for (int v = 0; v < gb.nvars; ++v)
    A.var_image.push_back(to_dense(coords_of(MultiPoly::variable(gb.field, gb.nvars, v)), A.dim));

  return A;
}

}  // namespace singhh
