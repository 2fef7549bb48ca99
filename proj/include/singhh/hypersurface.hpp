#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "singhh/groebner.hpp"

namespace singhh {

// Quotient of the polynomial ring by the ideal of all partial derivatives of Q.
// The staircase presentation keeps every critical point of Q, including points
// away from the origin over the algebraic closure; milnor_number cuts the result
// down to the origin. Math error when the quotient is infinite dimensional (the
// critical locus is not isolated); Input error when Q is constant or every
// partial derivative vanishes.
CommAlgebra milnor_algebra(const MultiPoly& Q, const std::vector<std::string>& vars,
                           const MonomialOrder& order = MonomialOrder::grevlex());

// Dimension of the origin component of the Jacobian quotient: the subspace on
// which every variable class acts nilpotently. This is the multiplicity of the
// critical point at the origin; critical points elsewhere do not contribute.
int milnor_number(const CommAlgebra& milnor);

// Quotient by (Q, all partial derivatives); the dimension is the Tyurina number.
// On top of the milnor_algebra requirements, every variable must be nilpotent in
// the quotient, which pins the critical points of Q to the origin.
CommAlgebra tyurina_algebra(const MultiPoly& Q, const std::vector<std::string>& vars,
                            const MonomialOrder& order = MonomialOrder::grevlex());

// Dimension of the stable cohomology of the hypersurface cut out by Q in each
// degree of [n_min, n_max]. Even degrees carry the cokernel of multiplication by
// Q on the origin component of the Milnor algebra, odd degrees its kernel; the
// result is 2-periodic.
std::map<int, int> stable_hh_dims(const MultiPoly& Q, const std::vector<std::string>& vars,
                                  int n_min, int n_max);

// Rational weights giving every monomial of Q weighted degree 1, when such
// weights exist in the given coordinates. The weights do not depend on the
// coefficient field; entries live in Field::rationals().
std::optional<std::vector<Scalar>> quasi_homogeneous_weights(const MultiPoly& Q);

// Isomorphism invariants of a finite dimensional local algebra: total dimension,
// the layer dimensions of the filtration by powers of the maximal ideal, the
// socle dimension, and the dimension mod the square of the maximal ideal.
struct AlgebraFingerprint {
  int dimension = 0;
  std::vector<int> hilbert;  // dim m^i / m^(i+1), ends with the last nonzero layer
  int socle_dim = 0;
  int mod_square_dim = 0;

  bool operator==(const AlgebraFingerprint&) const = default;
  std::string to_text() const;
};

// Invariants computed directly from the multiplication table. The maximal ideal
// is the one generated by the variable classes, which must all be nilpotent.
AlgebraFingerprint algebra_fingerprint(const CommAlgebra& A);

// Fingerprint of the Tyurina algebra of Q. Basis-free: permuting variables or
// changing the monomial order does not change the result.
AlgebraFingerprint fingerprint(const MultiPoly& Q, const std::vector<std::string>& vars,
                               const MonomialOrder& order = MonomialOrder::grevlex());

// Necessary-condition comparison of two hypersurface singularities in the same
// ring. distinct = some invariant differs, so the singularities cannot be
// isomorphic. A fingerprint match is not a proof of isomorphism.
struct CompareReport {
  AlgebraFingerprint first, second;
  bool distinct = false;

  std::string verdict() const { return distinct ? "distinct" : "fingerprint-equal"; }
  std::string to_text() const;
};

CompareReport compare_singularities(const MultiPoly& Q1, const MultiPoly& Q2,
                                    const std::vector<std::string>& vars);

// Everything the CLI reports about one hypersurface singularity. The milnor
// algebra keeps all critical points; milnor_number, tyurina_number and the
// stable dimensions describe the origin only.
struct SingularityReport {
  MultiPoly Q;
  std::vector<std::string> vars;
  CommAlgebra milnor;
  CommAlgebra tyurina;
  int milnor_number = 0;
  int tyurina_number = 0;
  int stable_even_dim = 0;
  int stable_odd_dim = 0;
  std::optional<std::vector<Scalar>> quasi_homogeneous;
  std::vector<std::string> warnings;

  std::string to_text() const;  // JSON with a fixed key order
};

SingularityReport singularity_report(const MultiPoly& Q, const std::vector<std::string>& vars);

}  // namespace singhh
