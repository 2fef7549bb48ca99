#include "singhh/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "singhh/errors.hpp"

namespace singhh {

namespace {
std::atomic<int> g_threads{1};
}  // namespace

void set_thread_count(int n) { g_threads.store(n < 1 ? 1 : n); }
int thread_count() { return g_threads.load(); }

DenseVec to_dense(const SparseVec& v, int n) {
  DenseVec out(static_cast<size_t>(n), Scalar(0));
  for (const auto& [c, x] : v) out[static_cast<size_t>(c)] = x;
  return out;
}

SparseVec to_sparse(const Field& F, const DenseVec& v) {
  SparseVec out;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    Scalar r = F.reduce(v[static_cast<size_t>(i)]);
    if (!F.is_zero(r)) out.emplace_back(i, std::move(r));
  }
  return out;
}

Matrix::Matrix(const Field& F, int rows, int cols)
    : field_(F), rows_(rows), cols_(cols), dense_storage_(false), sparse_(static_cast<size_t>(rows)) {
  if (rows < 0 || cols < 0) fail_input("negative matrix dimension");
}

Matrix Matrix::identity(const Field& F, int n) {
  Matrix m(F, n, n);
  for (int i = 0; i < n; ++i) m.sparse_[static_cast<size_t>(i)].emplace_back(i, F.one());
  return m;
}

Matrix Matrix::from_rows(const Field& F, const std::vector<DenseVec>& rows) {
  int nc = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  Matrix m(F, static_cast<int>(rows.size()), nc);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != nc) fail_input("ragged matrix rows");
    m.sparse_[i] = to_sparse(F, rows[i]);
  }
  return m;
}

Matrix Matrix::from_columns(const Field& F, const std::vector<DenseVec>& cols) {
  int nr = cols.empty() ? 0 : static_cast<int>(cols[0].size());
  Matrix m(F, nr, static_cast<int>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) {
    if (static_cast<int>(cols[j].size()) != nr) fail_input("ragged matrix columns");
    for (int i = 0; i < nr; ++i) {
      Scalar r = F.reduce(cols[j][static_cast<size_t>(i)]);
      if (!F.is_zero(r)) m.sparse_[static_cast<size_t>(i)].emplace_back(static_cast<int>(j), std::move(r));
    }
  }
  return m;
}

Matrix Matrix::from_sparse_rows(const Field& F, int cols, std::vector<SparseVec> rows) {
  Matrix m(F, static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].empty() && (rows[i].front().first < 0 || rows[i].back().first >= cols))
      fail_input("sparse row entry out of range");
    m.sparse_[i] = std::move(rows[i]);
  }
  return m;
}

Scalar Matrix::get(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) fail_input("matrix index out of range");
  if (dense_storage_) return dense_[static_cast<size_t>(i) * cols_ + j];
  const SparseVec& r = sparse_[static_cast<size_t>(i)];
  auto it = std::lower_bound(r.begin(), r.end(), j,
                             [](const auto& e, int c) { return e.first < c; });
  if (it != r.end() && it->first == j) return it->second;
  return Scalar(0);
}

void Matrix::set(int i, int j, const Scalar& v) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) fail_input("matrix index out of range");
  Scalar r = field_.reduce(v);
  if (dense_storage_) {
    dense_[static_cast<size_t>(i) * cols_ + j] = std::move(r);
    return;
  }
  SparseVec& row = sparse_[static_cast<size_t>(i)];
  auto it = std::lower_bound(row.begin(), row.end(), j,
                             [](const auto& e, int c) { return e.first < c; });
  bool present = it != row.end() && it->first == j;
  if (field_.is_zero(r)) {
    if (present) row.erase(it);
  } else if (present) {
    it->second = std::move(r);
  } else {
    row.insert(it, {j, std::move(r)});
  }
}

long Matrix::nnz() const {
  long n = 0;
  if (dense_storage_) {
    for (const Scalar& x : dense_)
      if (!field_.is_zero(x)) ++n;
  } else {
    for (const SparseVec& r : sparse_) n += static_cast<long>(r.size());
  }
  return n;
}

void Matrix::ensure_sparse() {
  if (!dense_storage_) return;
  sparse_.assign(static_cast<size_t>(rows_), {});
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      const Scalar& x = dense_[static_cast<size_t>(i) * cols_ + j];
      if (!field_.is_zero(x)) sparse_[static_cast<size_t>(i)].emplace_back(j, x);
    }
  dense_.clear();
  dense_storage_ = false;
}

void Matrix::ensure_dense() {
  if (dense_storage_) return;
  dense_.assign(static_cast<size_t>(rows_) * cols_, Scalar(0));
  for (int i = 0; i < rows_; ++i)
    for (const auto& [c, x] : sparse_[static_cast<size_t>(i)])
      dense_[static_cast<size_t>(i) * cols_ + c] = x;
  sparse_.clear();
  dense_storage_ = true;
}

void Matrix::pack() {
  long cells = static_cast<long>(rows_) * cols_;
  if (cells == 0) return;
  bool want_dense = 4 * nnz() >= cells;
  if (want_dense)
    ensure_dense();
  else
    ensure_sparse();
}

SparseVec Matrix::sparse_row(int i) const {
  if (i < 0 || i >= rows_) fail_input("row index out of range");
  if (!dense_storage_) return sparse_[static_cast<size_t>(i)];
  SparseVec out;
  for (int j = 0; j < cols_; ++j) {
    const Scalar& x = dense_[static_cast<size_t>(i) * cols_ + j];
    if (!field_.is_zero(x)) out.emplace_back(j, x);
  }
  return out;
}

const SparseVec& Matrix::row_view(int i, SparseVec& scratch) const {
  if (!dense_storage_) return sparse_[static_cast<size_t>(i)];
  scratch = sparse_row(i);
  return scratch;
}

DenseVec Matrix::dense_row(int i) const {
  if (i < 0 || i >= rows_) fail_input("row index out of range");
  if (dense_storage_) {
    auto b = dense_.begin() + static_cast<long>(i) * cols_;
    return DenseVec(b, b + cols_);
  }
  return to_dense(sparse_[static_cast<size_t>(i)], cols_);
}

DenseVec Matrix::column(int j) const {
  if (j < 0 || j >= cols_) fail_input("column index out of range");
  DenseVec out(static_cast<size_t>(rows_), Scalar(0));
  for (int i = 0; i < rows_; ++i) out[static_cast<size_t>(i)] = get(i, j);
  return out;
}

Matrix Matrix::mul(const Matrix& o) const {
  if (cols_ != o.rows_ || field_ != o.field_) fail_input("matrix product shape/field mismatch");
  Matrix out(field_, rows_, o.cols_);
  SparseVec scratch_a, scratch_b;
  std::vector<std::pair<int, Scalar>> gather;
  for (int i = 0; i < rows_; ++i) {
    gather.clear();
    const SparseVec& ri = row_view(i, scratch_a);
    for (const auto& [k, a] : ri)
      for (const auto& [j, b] : o.row_view(k, scratch_b))
        gather.emplace_back(j, field_.mul(a, b));
    std::sort(gather.begin(), gather.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    SparseVec merged;
    for (auto& [j, v] : gather) {
      if (!merged.empty() && merged.back().first == j)
        merged.back().second = field_.add(merged.back().second, v);
      else
        merged.emplace_back(j, std::move(v));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [&](const auto& e) { return field_.is_zero(e.second); }),
                 merged.end());
    out.sparse_[static_cast<size_t>(i)] = std::move(merged);
  }
  return out;
}

DenseVec Matrix::apply(const DenseVec& v) const {
  if (static_cast<int>(v.size()) != cols_) fail_input("vector length mismatch");
  DenseVec out(static_cast<size_t>(rows_), Scalar(0));
  for (int i = 0; i < rows_; ++i) {
    Scalar acc(0);
    for (const auto& [c, x] : sparse_row(i)) acc += x * v[static_cast<size_t>(c)];
    out[static_cast<size_t>(i)] = field_.reduce(acc);
  }
  return out;
}

Matrix Matrix::add(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) fail_input("matrix sum shape/field mismatch");
  Matrix out(field_, rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    SparseVec a = sparse_row(i), b = o.sparse_row(i), r;
    size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
      if (ib == b.size() || (ia < a.size() && a[ia].first < b[ib].first)) {
        r.push_back(a[ia++]);
      } else if (ia == a.size() || b[ib].first < a[ia].first) {
        r.push_back(b[ib++]);
      } else {
        Scalar s = field_.add(a[ia].second, b[ib].second);
        if (!field_.is_zero(s)) r.emplace_back(a[ia].first, std::move(s));
        ++ia, ++ib;
      }
    }
    out.sparse_[static_cast<size_t>(i)] = std::move(r);
  }
  return out;
}

Matrix Matrix::sub(const Matrix& o) const { return add(o.neg()); }

Matrix Matrix::scale(const Scalar& c) const {
  Matrix out(field_, rows_, cols_);
  Scalar cr = field_.reduce(c);
  if (field_.is_zero(cr)) return out;
  for (int i = 0; i < rows_; ++i) {
    SparseVec r = sparse_row(i);
    for (auto& [col, x] : r) x = field_.mul(x, cr);
    out.sparse_[static_cast<size_t>(i)] = std::move(r);
  }
  return out;
}

Matrix Matrix::neg() const { return scale(Scalar(-1)); }

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (const auto& [c, x] : sparse_row(i)) out.sparse_[static_cast<size_t>(c)].emplace_back(i, x);
  return out;
}

bool Matrix::is_zero() const { return nnz() == 0; }

bool Matrix::equal(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_) return false;
  for (int i = 0; i < rows_; ++i) {
    SparseVec a = sparse_row(i), b = o.sparse_row(i);
    if (a.size() != b.size()) return false;
    for (size_t k = 0; k < a.size(); ++k)
      if (a[k].first != b[k].first || !field_.equal(a[k].second, b[k].second)) return false;
  }
  return true;
}

void Matrix::set_block(int r0, int c0, const Matrix& block) {
  if (r0 < 0 || c0 < 0 || r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_)
    fail_input("block out of range");
  for (int i = 0; i < block.rows_; ++i)
    for (const auto& [c, x] : block.sparse_row(i)) set(r0 + i, c0 + c, x);
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.field_ != b.field_) fail_input("hstack shape/field mismatch");
  Matrix out(a.field_, a.rows_, a.cols_ + b.cols_);
  out.set_block(0, 0, a);
  out.set_block(0, a.cols_, b);
  return out;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.cols_ || a.field_ != b.field_) fail_input("vstack shape/field mismatch");
  Matrix out(a.field_, a.rows_ + b.rows_, a.cols_);
  out.set_block(0, 0, a);
  out.set_block(a.rows_, 0, b);
  return out;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
  if (a.field_ != b.field_) fail_input("kron field mismatch");
  Matrix out(a.field_, a.rows_ * b.rows_, a.cols_ * b.cols_);
  for (int ia = 0; ia < a.rows_; ++ia)
    for (const auto& [ja, va] : a.sparse_row(ia))
      for (int ib = 0; ib < b.rows_; ++ib)
        for (const auto& [jb, vb] : b.sparse_row(ib))
          out.set(ia * b.rows_ + ib, ja * b.cols_ + jb, a.field_.mul(va, vb));
  return out;
}

namespace {

// r := r - f * p, result has no entry at p's pivot positions that cancel.
SparseVec axpy_sub(const Field& F, const SparseVec& r, const Scalar& f, const SparseVec& p) {
  SparseVec out;
  out.reserve(r.size() + p.size());
  size_t ir = 0, ip = 0;
  while (ir < r.size() || ip < p.size()) {
    if (ip == p.size() || (ir < r.size() && r[ir].first < p[ip].first)) {
      out.push_back(r[ir++]);
    } else if (ir == r.size() || p[ip].first < r[ir].first) {
      Scalar v = F.mul(F.neg(f), p[ip].second);
      if (!F.is_zero(v)) out.emplace_back(p[ip].first, std::move(v));
      ++ip;
    } else {
      Scalar v = F.sub(r[ir].second, F.mul(f, p[ip].second));
      if (!F.is_zero(v)) out.emplace_back(r[ir].first, std::move(v));
      ++ir, ++ip;
    }
  }
  return out;
}

Scalar value_at(const SparseVec& r, int col) {
  auto it = std::lower_bound(r.begin(), r.end(), col,
                             [](const auto& e, int c) { return e.first < c; });
  if (it != r.end() && it->first == col) return it->second;
  return Scalar(0);
}

struct EchelonWork {
  int rank = 0;
  std::vector<std::pair<int, int>> pivots;  // (work row index, col), in selection order
  std::vector<SparseVec> rows;              // all rows, pivot rows monic and interreduced
  std::vector<bool> is_pivot;
  std::vector<int> residual_rows;  // nonzero non-pivot rows (entries beyond the pivot limit)
};

// RREF with pivot columns restricted to [0, pivot_limit). The tail columns ride
// along, which is how solving with right-hand sides works.
EchelonWork eliminate_rows(const Field& F, std::vector<SparseVec> rows, int ncols, int pivot_limit) {
  EchelonWork w;
  w.rows = std::move(rows);
  int nrows = static_cast<int>(w.rows.size());
  w.is_pivot.assign(static_cast<size_t>(nrows), false);

  std::vector<long> col_count(static_cast<size_t>(ncols), 0);
  for (const SparseVec& r : w.rows)
    for (const auto& [c, x] : r) ++col_count[static_cast<size_t>(c)];

  auto head_size = [&](const SparseVec& r) {
    size_t n = 0;
    for (const auto& [c, x] : r)
      if (c < pivot_limit) ++n;
    return n;
  };

  while (true) {
    int best_row = -1;
    size_t best_nnz = 0;
    for (int i = 0; i < nrows; ++i) {
      if (w.is_pivot[static_cast<size_t>(i)]) continue;
      size_t h = head_size(w.rows[static_cast<size_t>(i)]);
      if (h == 0) continue;
      if (best_row < 0 || h < best_nnz) {
        best_row = i;
        best_nnz = h;
      }
    }
    if (best_row < 0) break;

    const SparseVec& prow = w.rows[static_cast<size_t>(best_row)];
    int pc = -1;
    long pc_count = 0;
    for (const auto& [c, x] : prow) {
      if (c >= pivot_limit) break;
      if (pc < 0 || col_count[static_cast<size_t>(c)] < pc_count) {
        pc = c;
        pc_count = col_count[static_cast<size_t>(c)];
      }
    }

    Scalar piv = value_at(prow, pc);
    Scalar pinv = F.inv(piv);
    for (auto& [c, x] : w.rows[static_cast<size_t>(best_row)]) x = F.mul(x, pinv);
    for (const auto& [c, x] : w.rows[static_cast<size_t>(best_row)]) --col_count[static_cast<size_t>(c)];
    w.is_pivot[static_cast<size_t>(best_row)] = true;
    w.pivots.emplace_back(best_row, pc);

    std::vector<int> touched;
    for (int i = 0; i < nrows; ++i) {
      if (i == best_row) continue;
      if (!F.is_zero(value_at(w.rows[static_cast<size_t>(i)], pc))) touched.push_back(i);
    }

    std::vector<SparseVec> updated(touched.size());
    const SparseVec& pivot_row = w.rows[static_cast<size_t>(best_row)];
    auto update_range = [&](size_t first, size_t stride) {
      for (size_t k = first; k < touched.size(); k += stride) {
        const SparseVec& r = w.rows[static_cast<size_t>(touched[k])];
        updated[k] = axpy_sub(F, r, value_at(r, pc), pivot_row);
      }
    };
    int nt = thread_count();
    if (nt > 1 && touched.size() >= 64) {
      std::vector<std::thread> pool;
      pool.reserve(static_cast<size_t>(nt));
      for (int t = 0; t < nt; ++t) pool.emplace_back(update_range, static_cast<size_t>(t), static_cast<size_t>(nt));
      for (auto& th : pool) th.join();
    } else {
      update_range(0, 1);
    }

    for (size_t k = 0; k < touched.size(); ++k) {
      size_t i = static_cast<size_t>(touched[k]);
      if (!w.is_pivot[i])
        for (const auto& [c, x] : w.rows[i]) --col_count[static_cast<size_t>(c)];
      w.rows[i] = std::move(updated[k]);
      if (!w.is_pivot[i])
        for (const auto& [c, x] : w.rows[i]) ++col_count[static_cast<size_t>(c)];
    }
  }

  w.rank = static_cast<int>(w.pivots.size());
  for (int i = 0; i < nrows; ++i)
    if (!w.is_pivot[static_cast<size_t>(i)] && !w.rows[static_cast<size_t>(i)].empty())
      w.residual_rows.push_back(i);
  return w;
}

std::vector<SparseVec> matrix_rows(const Matrix& a) {
  std::vector<SparseVec> rows;
  rows.reserve(static_cast<size_t>(a.rows()));
  for (int i = 0; i < a.rows(); ++i) rows.push_back(a.sparse_row(i));
  return rows;
}

}  // namespace

Echelon eliminate(const Matrix& a) {
  EchelonWork w = eliminate_rows(a.field(), matrix_rows(a), std::max(a.cols(), 1), a.cols());
  Echelon e;
  e.rows = a.rows();
  e.cols = a.cols();
  e.rank = w.rank;
  std::vector<std::pair<int, int>> pivots = w.pivots;  // (work row, col)
  std::sort(pivots.begin(), pivots.end(),
            [](const auto& x, const auto& y) { return x.second < y.second; });
  for (const auto& [r, c] : pivots) {
    e.pivot_cols.push_back(c);
    e.reduced_rows.push_back(w.rows[static_cast<size_t>(r)]);
  }
  return e;
}

int rank(const Matrix& a) { return eliminate(a).rank; }

int cokernel_dim(const Matrix& a) { return a.rows() - rank(a); }

RankKernel rank_and_kernel(const Matrix& a) {
  Echelon e = eliminate(a);
  RankKernel out;
  out.rank = e.rank;
  std::vector<bool> is_pivot_col(static_cast<size_t>(a.cols()), false);
  for (int c : e.pivot_cols) is_pivot_col[static_cast<size_t>(c)] = true;
  const Field& F = a.field();
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot_col[static_cast<size_t>(f)]) continue;
    DenseVec v(static_cast<size_t>(a.cols()), Scalar(0));
    v[static_cast<size_t>(f)] = F.one();
    for (int r = 0; r < e.rank; ++r) {
      Scalar c = value_at(e.reduced_rows[static_cast<size_t>(r)], f);
      if (!F.is_zero(c)) v[static_cast<size_t>(e.pivot_cols[static_cast<size_t>(r)])] = F.neg(c);
    }
    out.kernel.push_back(std::move(v));
  }
  return out;
}

std::vector<DenseVec> image_basis(const Matrix& a) {
  Echelon e = eliminate(a.transpose());
  std::vector<DenseVec> out;
  out.reserve(static_cast<size_t>(e.rank));
  for (const SparseVec& r : e.reduced_rows) out.push_back(to_dense(r, a.rows()));
  return out;
}

std::optional<Matrix> multi_solve(const Matrix& a, const Matrix& B) {
  if (a.rows() != B.rows() || a.field() != B.field()) fail_input("solve shape/field mismatch");
  const Field& F = a.field();
  int n = a.cols(), m = B.cols();
  std::vector<SparseVec> rows(static_cast<size_t>(a.rows()));
  for (int i = 0; i < a.rows(); ++i) {
    rows[static_cast<size_t>(i)] = a.sparse_row(i);
    for (const auto& [c, x] : B.sparse_row(i)) rows[static_cast<size_t>(i)].emplace_back(n + c, x);
  }
  EchelonWork w = eliminate_rows(F, std::move(rows), n + m, n);
  for (int i : w.residual_rows)
    if (!w.rows[static_cast<size_t>(i)].empty()) return std::nullopt;
  Matrix X(F, n, m);
  for (const auto& [r, pc] : w.pivots)
    for (const auto& [c, x] : w.rows[static_cast<size_t>(r)])
      if (c >= n) X.set(pc, c - n, x);
  return X;
}

std::optional<DenseVec> solve(const Matrix& a, const DenseVec& b) {
  if (static_cast<int>(b.size()) != a.rows()) fail_input("solve rhs length mismatch");
  auto X = multi_solve(a, Matrix::from_columns(a.field(), {b}));
  if (!X) return std::nullopt;
  return X->column(0);
}

int span_rank(const Field& F, const std::vector<DenseVec>& vecs, int n) {
  for (const DenseVec& v : vecs)
    if (static_cast<int>(v.size()) != n) fail_input("span vector length mismatch");
  return rank(Matrix::from_rows(F, vecs.empty() ? std::vector<DenseVec>{DenseVec(static_cast<size_t>(n), Scalar(0))} : vecs));
}

bool in_span(const Field& F, const std::vector<DenseVec>& span, const DenseVec& v) {
  int n = static_cast<int>(v.size());
  int r0 = span_rank(F, span, n);
  std::vector<DenseVec> ext = span;
  ext.push_back(v);
  return span_rank(F, ext, n) == r0;
}

std::optional<Matrix> coordinates_in(const Matrix& basis, const Matrix& B) {
  return multi_solve(basis, B);
}

}  // namespace singhh
