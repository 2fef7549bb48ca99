#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "singhh/poly.hpp"

namespace singhh {

// Pair of square polynomial matrices multiplying to the potential times the
// identity on both sides; the concrete presentation of a module over the
// hypersurface ring.
class MatrixFactorization {
public:
  // Validates the shapes and both products exactly; any offending entry is
  // named in the error.
  MatrixFactorization(std::vector<std::vector<MultiPoly>> phi,
                      std::vector<std::vector<MultiPoly>> psi, MultiPoly potential);

  int size() const { return size_; }
  const MultiPoly& potential() const { return potential_; }
  const std::vector<std::vector<MultiPoly>>& phi() const { return phi_; }
  const std::vector<std::vector<MultiPoly>>& psi() const { return psi_; }

  // The shift swaps the two matrices; it exchanges even and odd cohomology.
  MatrixFactorization shift() const;

  // (1, Q): the contractible factorization with vanishing cohomology.
  static MatrixFactorization trivial(const MultiPoly& potential);

  void write(std::ostream& os, const std::vector<std::string>& vars) const;
  static MatrixFactorization read(std::istream& is);
  static MatrixFactorization read_file(const std::string& path);
  const std::vector<std::string>& var_names() const { return var_names_; }

private:
  int size_;
  std::vector<std::vector<MultiPoly>> phi_, psi_;
  MultiPoly potential_;
  std::vector<std::string> var_names_;  // filled by read, used by write defaults
};

MatrixFactorization make_mf(std::vector<std::vector<MultiPoly>> phi,
                            std::vector<std::vector<MultiPoly>> psi, MultiPoly potential);

// Dimensions (even, odd) of the two cohomology groups of the 2-periodic
// morphism complex from E to F over a shared potential. Finite precisely in
// the isolated-singularity regime; an infinite answer is a Math error naming
// that precondition.
std::pair<int, int> mf_hom_cohomology(const MatrixFactorization& E,
                                      const MatrixFactorization& F);

}  // namespace singhh
