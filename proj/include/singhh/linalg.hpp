#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "singhh/field.hpp"

namespace singhh {

// Entries of a sparse row, sorted by column index, no explicit zeros.
using SparseVec = std::vector<std::pair<int, Scalar>>;
using DenseVec = std::vector<Scalar>;

DenseVec to_dense(const SparseVec& v, int n);
SparseVec to_sparse(const Field& F, const DenseVec& v);

// Threads used inside row elimination. Results are bit-identical for any setting:
// parallel work is a strided partition of independent per-row updates.
void set_thread_count(int n);
int thread_count();

// Exact matrix over a Field. Storage is sparse rows or a dense row-major block;
// pack() picks whichever fits the density (dense at >= 25% nonzero). All entry
// values pass through the field's reduce, so prime-field residues stay canonical.
class Matrix {
public:
  Matrix(const Field& F, int rows, int cols);  // zero matrix, sparse storage

  static Matrix identity(const Field& F, int n);
  static Matrix from_rows(const Field& F, const std::vector<DenseVec>& rows);
  static Matrix from_columns(const Field& F, const std::vector<DenseVec>& cols);
  // rows are sparse, already sorted by column, entries already reduced.
  static Matrix from_sparse_rows(const Field& F, int cols, std::vector<SparseVec> rows);

  const Field& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar get(int i, int j) const;
  void set(int i, int j, const Scalar& v);

  long nnz() const;
  bool is_dense_storage() const { return dense_storage_; }
  void pack();  // re-pick storage by density

  SparseVec sparse_row(int i) const;
  DenseVec dense_row(int i) const;
  DenseVec column(int j) const;

  Matrix mul(const Matrix& o) const;
  DenseVec apply(const DenseVec& v) const;
  Matrix add(const Matrix& o) const;
  Matrix sub(const Matrix& o) const;
  Matrix scale(const Scalar& c) const;
  Matrix neg() const;
  Matrix transpose() const;
  bool is_zero() const;
  bool equal(const Matrix& o) const;

  void set_block(int r0, int c0, const Matrix& block);
  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);
  // Kronecker product: (a ⊗ b)[(ia,ib),(ja,jb)] = a[ia,ja] * b[ib,jb],
  // consistent with column-major vec: vec(A X B) = (B^T ⊗ A) vec(X).
  static Matrix kron(const Matrix& a, const Matrix& b);

private:
  void ensure_sparse();
  void ensure_dense();
  // borrow a row without copying when storage is sparse
  const SparseVec& row_view(int i, SparseVec& scratch) const;

  Field field_;
  int rows_, cols_;
  bool dense_storage_;
  std::vector<SparseVec> sparse_;  // per row
  std::vector<Scalar> dense_;      // row-major
};

// Reduced row echelon form of A. Pivot rows are monic and the pivot column is
// cleared above and below; pivot selection is sparsity-guided (fewest nonzeros,
// ties by lowest index) and fully deterministic.
struct Echelon {
  int rows = 0, cols = 0, rank = 0;
  std::vector<int> pivot_cols;          // increasing
  std::vector<SparseVec> reduced_rows;  // rank rows, row r has leading entry 1 at pivot_cols[r]
};

Echelon eliminate(const Matrix& a);

int rank(const Matrix& a);
int cokernel_dim(const Matrix& a);  // rows - rank

struct RankKernel {
  int rank = 0;
  std::vector<DenseVec> kernel;  // basis vectors of length cols
};
RankKernel rank_and_kernel(const Matrix& a);

std::vector<DenseVec> image_basis(const Matrix& a);

std::optional<DenseVec> solve(const Matrix& a, const DenseVec& b);
// Solves a * X = B column by column with a single elimination of a; nullopt if
// any column is inconsistent.
std::optional<Matrix> multi_solve(const Matrix& a, const Matrix& B);

// Span comparison helpers. Vectors are ambient-length dense columns.
int span_rank(const Field& F, const std::vector<DenseVec>& vecs, int n);
bool in_span(const Field& F, const std::vector<DenseVec>& span, const DenseVec& v);

// Coordinates of each column of B in the span of the columns of basis
// (columns must be independent); nullopt if some column falls outside.
std::optional<Matrix> coordinates_in(const Matrix& basis, const Matrix& B);

}  // namespace singhh
