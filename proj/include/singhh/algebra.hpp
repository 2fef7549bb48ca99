#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "singhh/groebner.hpp"
#include "singhh/linalg.hpp"

namespace singhh {

// Finite dimensional associative unital algebra over a Field, given by structure
// constants on a fixed basis. Construction validates associativity and the unit
// axioms and reports the first offending basis triple.
class Algebra {
public:
  Algebra(const Field& F, std::vector<std::string> labels,
          std::vector<std::vector<SparseVec>> table, DenseVec unit, std::string name = "");

  static Algebra from_commutative(const CommAlgebra& A, std::string name = "");
  static Algebra enveloping(const Algebra& A);  // A tensor A-opposite

  const Field& field() const { return field_; }
  int dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const DenseVec& unit() const { return unit_; }
  const SparseVec& table(int i, int j) const;

  DenseVec mul(const DenseVec& a, const DenseVec& b) const;
  Matrix left_mult(const DenseVec& a) const;
  Matrix right_mult(const DenseVec& a) const;
  Matrix left_mult_basis(int i) const;   // L of basis element i
  Matrix right_mult_basis(int i) const;  // R of basis element i

  bool is_commutative() const;
  std::vector<DenseVec> center_basis() const;
  int derivation_dim() const;
  int inner_derivation_dim() const;

  // For the enveloping algebra of A: index of the basis pair (i, j).
  static int pair_index(int i, int j, int d) { return i * d + j; }

  void write(std::ostream& os) const;
  static Algebra read(std::istream& is);
  static Algebra read_file(const std::string& path);

private:
  void validate() const;

  Field field_;
  int dim_;
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::vector<SparseVec>> table_;  // table_[i][j] = coords of b_i * b_j
  DenseVec unit_;
};

}  // namespace singhh
