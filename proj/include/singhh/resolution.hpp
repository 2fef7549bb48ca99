#pragma once

#include <iosfwd>
#include <memory>

#include "singhh/algebra.hpp"
#include "singhh/complex.hpp"

namespace singhh {

// Element of the enveloping algebra, sparse over its pair basis.
using AlgElem = SparseVec;

// Free bimodule resolution of A: a complex of free modules over Λ = A ⊗ A-op in
// degrees [-L, 0] together with an augmentation onto A. The component at degree
// -s is rank(s) copies of Λ; its linear basis is ordered (copy t, Λ-basis w) with
// index t * dim(Λ) + w. The differential is recorded both as a matrix of Λ
// elements and as the underlying scalar matrix (block (u,t) is right
// multiplication by the entry z_ut, which is what left-linearity forces).
class BimoduleResolution {
public:
  enum class Provenance { Bar, Loaded, PeriodicExtended, Padded };

  const Algebra& base() const { return *base_; }
  const Algebra& env() const { return *env_; }
  int length() const { return length_; }
  int rank(int s) const;
  int free_dim(int s) const { return rank(s) * env_->dim(); }
  Provenance provenance() const { return provenance_; }
  int declared_period() const { return period_; }  // 0 when none declared

  const Matrix& underlying_diff(int s) const;  // d^{-s}: P^{-s} -> P^{-s+1}, 1 <= s <= L
  const Matrix& augmentation() const { return augmentation_; }
  // Sparse column t of the Λ-entry matrix of d^{-s}: pairs (target copy u, z_ut).
  const std::vector<std::pair<int, AlgElem>>& column_entries(int s, int t) const;

  // Underlying cochain complex on degrees [-L, 0].
  const CochainComplex& underlying() const;
  // Underlying complex with A glued in at degree 1 via the augmentation.
  CochainComplex augmented_complex() const;

  // Action of a Λ element on the degree -s component (diagonal left
  // multiplication on every copy), applied to a coordinate vector.
  DenseVec free_action(int s, const AlgElem& z, const DenseVec& x) const;
  // Action of a Λ basis element on A through the augmentation target structure.
  const Matrix& target_action(int zbasis) const;

  // Embeds the Λ element z as generator-copy t of the degree -s component.
  DenseVec embed_generator(int s, int t, const AlgElem& z) const;

  static BimoduleResolution bar(const Algebra& A, int L, long budget);
  static BimoduleResolution load(std::istream& is, const Algebra& A);
  static BimoduleResolution load_file(const std::string& path, const Algebra& A);
  // Repeats the declared period until the resolution has length L.
  BimoduleResolution extend_periodic(int L) const;
  // Direct sum with contractible two-term free complexes (rank `extra` between
  // degrees -s-1 and -s for every s in [0, L-1]); a deliberately non-minimal
  // resolution of the same algebra, used to test resolution independence.
  BimoduleResolution pad_contractible(int extra) const;

  void write(std::ostream& os) const;

private:
  BimoduleResolution() = default;
  Matrix assemble_diff(int s) const;
  void build_underlying();
  void build_target_actions();
  std::vector<std::string> exactness_problems() const;
  void validate_exactness() const;
  void verify_bar_homotopy() const;

  std::shared_ptr<const Algebra> base_, env_;
  int length_ = 0;
  int period_ = 0;
  Provenance provenance_ = Provenance::Bar;
  using EntryColumn = std::vector<std::pair<int, AlgElem>>;
  std::vector<int> ranks_;                    // ranks_[s], s = 0..L
  std::vector<std::vector<EntryColumn>> entries_;  // entries_[s-1][t] = {(u, z_ut)}
  std::vector<Matrix> underlying_;                     // underlying_[s-1] = matrix of d^{-s}
  Matrix augmentation_{Field::rationals(), 0, 0};
  std::vector<Matrix> target_actions_;                 // per Λ basis element, dim A x dim A
  std::shared_ptr<CochainComplex> underlying_complex_;
};

}  // namespace singhh
