#include "singhh/hochschild.hpp"

#include <string>

#include "singhh/errors.hpp"

namespace singhh {

long tensor_power_dim(int d, int n, long budget) {
  long t = 1;
  for (int k = 0; k < n; ++k) {
    t *= d;
    if (t > budget)
      fail_budget("tensor power dimension " + std::to_string(d) + "^" + std::to_string(n) +
                  " exceeds the size budget of " + std::to_string(budget) + " entries");
  }
  return t;
}

namespace {

// Decode a tensor-basis column into indices (i_1..i_n), i_1 most significant.
std::vector<int> decode_tensor(long col, int d, int n) {
  std::vector<int> idx(static_cast<size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    idx[static_cast<size_t>(k)] = static_cast<int>(col % d);
    col /= d;
  }
  return idx;
}

long encode_tensor(const std::vector<int>& idx, int d) {
  long col = 0;
  for (int i : idx) col = col * d + i;
  return col;
}

// Hochschild differential C^n -> C^{n+1} as a matrix on column-major vectorized
// cochains: vec index = column * d + output coordinate.
Matrix hochschild_delta(const Algebra& A, int n, long budget) {
  const Field& F = A.field();
  int d = A.dim();
  long src_cols = tensor_power_dim(d, n, budget);
  long tgt_cols = tensor_power_dim(d, n + 1, budget);
  tensor_power_dim(d, n + 2, budget);  // both component entry counts must fit

  Matrix delta(F, static_cast<int>(tgt_cols * d), static_cast<int>(src_cols * d));
  for (long col = 0; col < tgt_cols; ++col) {
    std::vector<int> a = decode_tensor(col, d, n + 1);

    // a_1 · f(a_2..a_{n+1})
    {
      long scol = encode_tensor(std::vector<int>(a.begin() + 1, a.end()), d);
      Matrix L = A.left_mult_basis(a[0]);
      for (int i = 0; i < d; ++i)
        for (const auto& [k, c] : L.sparse_row(i)) {
          long r = col * d + i, s = scol * d + k;
          delta.set(static_cast<int>(r), static_cast<int>(s),
                    F.add(delta.get(static_cast<int>(r), static_cast<int>(s)), c));
        }
    }
    // Σ (−1)^i f(.., a_i a_{i+1}, ..)
    for (int pos = 1; pos <= n; ++pos) {
      Scalar sign = F.from_long(pos % 2 == 0 ? 1 : -1);
      for (const auto& [m, c] : A.table(a[static_cast<size_t>(pos) - 1], a[static_cast<size_t>(pos)])) {
        std::vector<int> merged;
        merged.reserve(static_cast<size_t>(n));
        for (int t = 0; t < pos - 1; ++t) merged.push_back(a[static_cast<size_t>(t)]);
        merged.push_back(m);
        for (int t = pos + 1; t <= n; ++t) merged.push_back(a[static_cast<size_t>(t)]);
        long scol = encode_tensor(merged, d);
        Scalar v = F.mul(sign, c);
        for (int k = 0; k < d; ++k) {
          long r = col * d + k, s = scol * d + k;
          delta.set(static_cast<int>(r), static_cast<int>(s),
                    F.add(delta.get(static_cast<int>(r), static_cast<int>(s)), v));
        }
      }
    }
    // (−1)^{n+1} f(a_1..a_n) · a_{n+1}
    {
      Scalar sign = F.from_long((n + 1) % 2 == 0 ? 1 : -1);
      long scol = encode_tensor(std::vector<int>(a.begin(), a.end() - 1), d);
      Matrix R = A.right_mult_basis(a[static_cast<size_t>(n)]);
      for (int i = 0; i < d; ++i)
        for (const auto& [k, c] : R.sparse_row(i)) {
          long r = col * d + i, s = scol * d + k;
          delta.set(static_cast<int>(r), static_cast<int>(s),
                    F.add(delta.get(static_cast<int>(r), static_cast<int>(s)), F.mul(sign, c)));
        }
    }
  }
  return delta;
}

DenseVec vectorize(const Matrix& cocycle) {
  DenseVec v(static_cast<size_t>(cocycle.rows()) * cocycle.cols(), Scalar(0));
  for (int i = 0; i < cocycle.rows(); ++i)
    for (const auto& [j, c] : cocycle.sparse_row(i))
      v[static_cast<size_t>(j) * cocycle.rows() + i] = c;
  return v;
}

Matrix devectorize(const Field& F, const DenseVec& v, int d, long cols) {
  Matrix m(F, d, static_cast<int>(cols));
  for (long j = 0; j < cols; ++j)
    for (int i = 0; i < d; ++i) {
      const Scalar& c = v[static_cast<size_t>(j) * d + i];
      if (!F.is_zero(c)) m.set(i, static_cast<int>(j), c);
    }
  return m;
}

}  // namespace

CochainComplex bar_cochain_complex(const Algebra& A, int n_max, long budget) {
  if (n_max < 0) fail_input("negative degree bound");
  const Field& F = A.field();
  int d = A.dim();
  std::vector<int> dims;
  std::vector<Matrix> diffs;
  for (int n = 0; n <= n_max; ++n)
    dims.push_back(static_cast<int>(tensor_power_dim(d, n + 1, budget)));
  for (int n = 0; n < n_max; ++n) diffs.push_back(hochschild_delta(A, n, budget));
  return CochainComplex(F, 0, std::move(dims), std::move(diffs));
}

std::map<int, int> hh_dims(const Algebra& A, int n_max, long budget) {
  CochainComplex c = bar_cochain_complex(A, n_max + 1, budget);
  return c.homology_dims(0, n_max);
}

std::vector<HochschildClass> hh_class_basis(const Algebra& A, int n, long budget) {
  const Field& F = A.field();
  int d = A.dim();
  long cols = tensor_power_dim(d, n, budget);
  Matrix dn = hochschild_delta(A, n, budget);
  auto rk = rank_and_kernel(dn);

  std::vector<DenseVec> boundaries;
  if (n > 0) {
    Matrix dprev = hochschild_delta(A, n - 1, budget);
    boundaries = image_basis(dprev);
  }

  // Extend the boundary space to the cocycle space; the added vectors represent
  // a basis of the quotient.
  std::vector<DenseVec> rows = boundaries;
  int base_rank = span_rank(F, rows, static_cast<int>(cols * d));
  std::vector<HochschildClass> out;
  for (const DenseVec& z : rk.kernel) {
    rows.push_back(z);
    int r = span_rank(F, rows, static_cast<int>(cols * d));
    if (r > base_rank) {
      base_rank = r;
      out.emplace_back(n, devectorize(F, z, d, cols));
    } else {
      rows.pop_back();
    }
  }
  return out;
}

HochschildClass cup_product(const Algebra& A, const HochschildClass& f, const HochschildClass& g,
                            long budget) {
  const Field& F = A.field();
  int d = A.dim();
  int m = f.degree, n = g.degree;
  long cols = tensor_power_dim(d, m + n, budget);
  long split = tensor_power_dim(d, n, budget);
  Matrix out(F, d, static_cast<int>(cols));
  for (long col = 0; col < cols; ++col) {
    long cf = col / split, cg = col % split;
    DenseVec prod = A.mul(f.cocycle.column(static_cast<int>(cf)), g.cocycle.column(static_cast<int>(cg)));
    for (int i = 0; i < d; ++i)
      if (!F.is_zero(prod[static_cast<size_t>(i)])) out.set(i, static_cast<int>(col), prod[static_cast<size_t>(i)]);
  }
  return HochschildClass(m + n, std::move(out));
}

HochschildClass unit_class(const Algebra& A) {
  Matrix m(A.field(), A.dim(), 1);
  for (int i = 0; i < A.dim(); ++i)
    if (!A.field().is_zero(A.unit()[static_cast<size_t>(i)])) m.set(i, 0, A.unit()[static_cast<size_t>(i)]);
  return HochschildClass(0, std::move(m));
}

bool is_hh_cocycle(const Algebra& A, const HochschildClass& f, long budget) {
  Matrix dn = hochschild_delta(A, f.degree, budget);
  DenseVec v = vectorize(f.cocycle);
  DenseVec img = dn.apply(v);
  for (const Scalar& c : img)
    if (!A.field().is_zero(c)) return false;
  return true;
}

bool is_hh_coboundary(const Algebra& A, const HochschildClass& f, long budget) {
  if (f.degree == 0) {
    for (int i = 0; i < f.cocycle.rows(); ++i)
      if (!A.field().is_zero(f.cocycle.get(i, 0))) return false;
    return true;
  }
  Matrix dprev = hochschild_delta(A, f.degree - 1, budget);
  return solve(dprev, vectorize(f.cocycle)).has_value();
}

}  // namespace singhh
