#pragma once

#include <optional>
#include <string>
#include <vector>

#include "singhh/linalg.hpp"
#include "singhh/poly.hpp"

namespace singhh {

// Reduced Groebner basis: monic generators, no term of any generator divisible by
// another generator's leading term, sorted by leading term (descending).
struct GroebnerBasis {
  MonomialOrder order;
  int nvars = 0;
  Field field = Field::rationals();
  std::vector<MultiPoly> gens;
};

GroebnerBasis groebner(const std::vector<MultiPoly>& gens, const MonomialOrder& order);

MultiPoly normal_form(const MultiPoly& f, const GroebnerBasis& gb);

bool ideal_contains(const GroebnerBasis& gb, const MultiPoly& f);

// Finite iff every variable has a pure power among the leading terms. When not,
// witness_var (if given) receives the least variable index with no pure power.
bool staircase_is_finite(const GroebnerBasis& gb, int* witness_var = nullptr);

// Monomials outside the leading term ideal, sorted by degree then lexicographic
// (earlier variables first within a degree). Finite staircase required.
std::vector<Exps> staircase_monomials(const GroebnerBasis& gb);

// Finite dimensional commutative quotient of a polynomial ring, with the
// staircase monomials as basis and multiplication through normal forms.
struct CommAlgebra {
  Field field = Field::rationals();
  int nvars = 0;
  std::vector<std::string> var_names;
  GroebnerBasis gb;
  int dim = 0;
  std::vector<Exps> basis;  // staircase, basis[0] is always the monomial 1
  // table[i][j]: coordinates of basis[i] * basis[j], sparse over basis indices
  std::vector<std::vector<SparseVec>> table;
  std::vector<DenseVec> var_image;  // coordinates of each variable's class

  DenseVec mul_coords(const DenseVec& a, const DenseVec& b) const;
  Matrix mult_operator(const DenseVec& a) const;  // left = right multiplication
  DenseVec element_coords(const MultiPoly& f) const;
  std::string element_to_string(const DenseVec& a) const;
};

struct InfiniteStaircase {
  int witness_var = -1;
};

// Builds the quotient by the ideal of gb; InfiniteStaircase when the quotient is
// not finite dimensional.
std::optional<CommAlgebra> quotient_algebra(const GroebnerBasis& gb,
                                            const std::vector<std::string>& var_names,
                                            InfiniteStaircase* why = nullptr);

}  // namespace singhh
