#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "singhh/errors.hpp"
#include "singhh/hypersurface.hpp"
#include "test_helpers.hpp"

using namespace singhh;
using testers::P;

static const std::vector<std::string> XY{"x", "y"};
static const std::vector<std::string> X{"x"};

namespace {

// Brute-force quotient dimension: polynomials of degree <= D modulo the span of
// all m*g with deg(m*g) <= D. Independent of the staircase machinery; the value
// stabilizes at the true dimension once D is large enough.
int truncated_quotient_dim(const std::vector<MultiPoly>& gens, int D) {
  const Field F = Field::rationals();
  std::map<Exps, int> idx;
  std::vector<Exps> monos;
  for (unsigned a = 0; a <= static_cast<unsigned>(D); ++a)
    for (unsigned b = 0; a + b <= static_cast<unsigned>(D); ++b) {
      idx[{a, b}] = static_cast<int>(monos.size());
      monos.push_back({a, b});
    }
  std::vector<DenseVec> cols;
  for (const MultiPoly& g : gens) {
    int dg = g.total_degree();
    for (const Exps& m : monos) {
      if (static_cast<int>(exps_degree(m)) + dg > D) continue;
      DenseVec col(monos.size(), F.zero());
      for (const auto& [e, c] : g.terms()) col[static_cast<size_t>(idx.at(exps_mul(m, e)))] = c;
      cols.push_back(std::move(col));
    }
  }
  return static_cast<int>(monos.size()) - rank(Matrix::from_columns(F, cols));
}

}  // namespace

TEST_CASE("univariate cusp family") {
  for (int m = 2; m <= 6; ++m) {
    MultiPoly q = P("x^" + std::to_string(m), X);
    CommAlgebra M = milnor_algebra(q, X);
    CHECK(M.dim == m - 1);
    CHECK(milnor_number(M) == m - 1);
    CHECK(tyurina_algebra(q, X).dim == m - 1);
  }
}

TEST_CASE("bivariate examples") {
  CommAlgebra M = milnor_algebra(P("x^3+y^3", XY), XY);
  CHECK(M.dim == 4);
  CHECK(M.basis == std::vector<Exps>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(tyurina_algebra(P("x^3+y^3", XY), XY).dim == 4);

  CommAlgebra C = milnor_algebra(P("x^3-y^2", XY), XY);
  CHECK(C.dim == 2);
  CHECK(tyurina_algebra(P("x^3-y^2", XY), XY).dim == 2);
}

TEST_CASE("global and origin dimensions differ on the witness") {
  MultiPoly q = P("x^4+y^5+x^2*y^3", XY);

  // the jacobian ideal has two extra simple zeros away from the origin, so the
  // global quotient is 14 dimensional while the origin carries multiplicity 12
  CommAlgebra M = milnor_algebra(q, XY);
  CommAlgebra T = tyurina_algebra(q, XY);
  CHECK(M.dim == 14);
  CHECK(milnor_number(M) == 12);
  CHECK(T.dim == 11);
  CHECK(rank(M.mult_operator(M.element_coords(q))) == 3);

  // brute-force cross checks: the degree-truncated span stabilizes at the
  // projective counts (two of sixteen intersection points sit at infinity)
  std::vector<MultiPoly> jac = jacobian(q);
  std::vector<MultiPoly> jq = jac;
  jq.push_back(q);
  CHECK(truncated_quotient_dim(jac, 20) == 16);
  CHECK(truncated_quotient_dim(jq, 20) == 13);

  // adjoining all monomials of degree 12 cuts away everything except the origin
  std::vector<MultiPoly> mu_loc = jac, tau_loc = jq;
  for (unsigned a = 0; a <= 12; ++a) {
    mu_loc.push_back(MultiPoly::monomial(M.field, Exps{a, 12 - a}, M.field.one()));
    tau_loc.push_back(MultiPoly::monomial(M.field, Exps{a, 12 - a}, M.field.one()));
  }
  CHECK(truncated_quotient_dim(mu_loc, 20) == 12);
  CHECK(truncated_quotient_dim(tau_loc, 20) == 11);
}

TEST_CASE("stable dimensions are two periodic") {
  std::map<int, int> d1 = stable_hh_dims(P("x^2", X), X, -3, 3);
  for (int n = -3; n <= 3; ++n) CHECK(d1.at(n) == 1);
  std::map<int, int> d2 = stable_hh_dims(P("x^3+y^3", XY), XY, -2, 4);
  for (int n = -2; n <= 4; ++n) CHECK(d2.at(n) == 4);
  std::map<int, int> d3 = stable_hh_dims(P("x^4+y^5+x^2*y^3", XY), XY, -3, 5);
  for (int n = -3; n <= 5; ++n) CHECK(d3.at(n) == 11);
  for (int n = -3; n <= 3; ++n) CHECK(d3.at(n) == d3.at(n + 2));
}

TEST_CASE("weights exist exactly when the euler relation holds") {
  Field F = Field::rationals();
  auto w1 = quasi_homogeneous_weights(P("x^3+y^3", XY));
  REQUIRE(w1.has_value());
  CHECK(F.equal((*w1)[0], F.parse("1/3")));
  CHECK(F.equal((*w1)[1], F.parse("1/3")));
  auto w2 = quasi_homogeneous_weights(P("x^3-y^2", XY));
  REQUIRE(w2.has_value());
  CHECK(F.equal((*w2)[0], F.parse("1/3")));
  CHECK(F.equal((*w2)[1], F.parse("1/2")));
  CHECK(!quasi_homogeneous_weights(P("x^4+y^5+x^2*y^3", XY)).has_value());

  for (const char* s : {"x^3+y^3", "x^3-y^2", "x^5+y^2"}) {
    MultiPoly q = P(s, XY);
    CHECK(quasi_homogeneous_weights(q).has_value());
    CommAlgebra M = milnor_algebra(q, XY);
    CHECK(M.mult_operator(M.element_coords(q)).is_zero());
    CHECK(M.dim == tyurina_algebra(q, XY).dim);
  }
}

TEST_CASE("fingerprints separate what they can") {
  AlgebraFingerprint a = fingerprint(P("x^2+y^2", XY), XY);
  AlgebraFingerprint b = fingerprint(P("x*y", XY), XY);
  CHECK(a == b);
  CHECK(a.dimension == 1);

  CompareReport eq = compare_singularities(P("x^2+y^2", XY), P("x*y", XY), XY);
  CHECK(!eq.distinct);
  CHECK(eq.verdict() == "fingerprint-equal");
  CompareReport ne = compare_singularities(P("x^3+y^3", XY), P("x^4+y^4", XY), XY);
  CHECK(ne.distinct);
  CHECK(ne.first.dimension == 4);
  CHECK(ne.second.dimension == 9);

  AlgebraFingerprint f1 = fingerprint(P("x^4+y^5+x^2*y^3", XY), XY);
  AlgebraFingerprint f2 = fingerprint(P("y^4+x^5+y^2*x^3", XY), XY);
  CHECK(f1 == f2);
  CHECK(f1.dimension == 11);
  CHECK(f1 == fingerprint(P("x^4+y^5+x^2*y^3", XY), XY, MonomialOrder::lex()));
  CHECK(f1 == fingerprint(P("x^4+y^5+x^2*y^3", XY), XY, MonomialOrder::graded_lex()));
}

TEST_CASE("reports collect the origin invariants") {
  SingularityReport rep = singularity_report(P("x^4+y^5+x^2*y^3", XY), XY);
  CHECK(rep.milnor_number == 12);
  CHECK(rep.tyurina_number == 11);
  CHECK(rep.stable_even_dim == 11);
  CHECK(rep.stable_odd_dim == 11);
  CHECK(!rep.quasi_homogeneous.has_value());
  CHECK(rep.warnings.empty());

  SingularityReport hom = singularity_report(P("x^3+y^3", XY), XY);
  CHECK(hom.quasi_homogeneous.has_value());
  CHECK(hom.milnor_number == hom.tyurina_number);
}

TEST_CASE("smooth points and off origin critical points") {
  SingularityReport lin = singularity_report(P("x", X), X);
  CHECK(lin.milnor_number == 0);
  CHECK(lin.stable_even_dim == 0);

  CommAlgebra M = milnor_algebra(P("x^2+x", X), X);
  CHECK(M.dim == 1);
  CHECK(milnor_number(M) == 0);
}

TEST_CASE("error surfaces") {
  try {
    milnor_algebra(P("x^2", XY), XY);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Math);
    CHECK(std::string(e.what()).find("non-isolated") != std::string::npos);
  }
  try {
    tyurina_algebra(P("x^2-2*x+1", X), X);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Input);
  }
  CHECK_THROWS_AS(milnor_algebra(P("3", X), X), Error);
  CHECK_THROWS_AS(milnor_algebra(MultiPoly::parse("x^5", X, Field::prime(5)), X), Error);
  CHECK_THROWS_AS(compare_singularities(P("x^2", X), P("x^2+y^2", XY), X), Error);
  CHECK_THROWS_AS(stable_hh_dims(P("x^2", X), X, 3, -3), Error);
}

TEST_CASE("prime field computations carry a warning") {
  SingularityReport rep = singularity_report(MultiPoly::parse("x^2", X, Field::prime(5)), X);
  CHECK(rep.warnings.size() == 1);
  CHECK(rep.milnor_number == 1);
}
