#include <sstream>

#include "doctest.h"
#include "singhh/complex.hpp"
#include "singhh/errors.hpp"
#include "test_helpers.hpp"

using namespace singhh;
using testers::P;

TEST_CASE("homology of two term complexes") {
  Field F = Field::rationals();
  CochainComplex iso(F, 0, {1, 1}, {Matrix::identity(F, 1)});
  auto h1 = iso.homology_dims();
  CHECK(h1[0] == 0);
  CHECK(h1[1] == 0);

  CochainComplex zero(F, 0, {1, 1}, {Matrix(F, 1, 1)});
  auto h2 = zero.homology_dims();
  CHECK(h2[0] == 1);
  CHECK(h2[1] == 1);
}

TEST_CASE("square of the differential is enforced") {
  Field F = Field::rationals();
  CHECK_THROWS_AS(
      CochainComplex(F, 0, {1, 1, 1}, {Matrix::identity(F, 1), Matrix::identity(F, 1)}), Error);
}

TEST_CASE("truncations split the dimensions") {
  Field F = Field::rationals();
  CochainComplex c(F, -2, {2, 3, 4}, {Matrix(F, 3, 2), Matrix(F, 4, 3)});
  CochainComplex below = c.truncate_le(-1);
  CochainComplex above = c.truncate_gt(-1);
  CHECK(below.lo() == -2);
  CHECK(below.hi() == -1);
  CHECK(above.lo() == 0);
  for (int d = -2; d <= 0; ++d) CHECK(c.dim(d) == below.dim(d) + above.dim(d));
  CHECK(c.truncate_le(5).hi() == 0);
  CHECK(c.truncate_le(-3).empty());
  CHECK(truncate(c, -1, TruncSide::Le).hi() == -1);
}

TEST_CASE("suspension shifts degrees") {
  Field F = Field::rationals();
  CochainComplex c(F, 0, {1, 1}, {Matrix::identity(F, 1)});
  CochainComplex s = c.shift(1);
  CHECK(s.lo() == -1);
  CHECK(s.hi() == 0);
  CHECK(s.dim(-1) == 1);
}

TEST_CASE("cone of the identity is acyclic") {
  Field F = Field::rationals();
  CochainComplex c(F, 0, {2, 2}, {Matrix(F, 2, 2)});
  CochainComplex k = cone(ChainMap::identity(c));
  for (const auto& [d, h] : k.homology_dims()) CHECK(h == 0);
}

TEST_CASE("hom complex agrees with the direct count of chain maps") {
  Field F = Field::rationals();
  CochainComplex c(F, 0, {1, 1}, {Matrix(F, 1, 1)});
  CochainComplex d(F, 0, {1, 1}, {Matrix::identity(F, 1)});
  for (const auto* a : {&c, &d})
    for (const auto* b : {&c, &d}) {
      auto h = hom_complex(*a, *b).homology_dims();
      CHECK(h[0] == chain_maps_mod_homotopy_dim(*a, *b));
    }
  CochainComplex k0 = CochainComplex::single(F, 0, 1);
  CochainComplex hk = hom_complex(k0, k0);
  CHECK(hk.lo() == 0);
  CHECK(hk.hi() == 0);
  CHECK(hk.dim(0) == 1);
}

TEST_CASE("koszul complex of a truncated polynomial ring") {
  Field F = Field::rationals();
  std::vector<std::string> xv{"x"};
  auto gb = groebner({P("x^2", xv)}, MonomialOrder::grevlex());
  auto B = quotient_algebra(gb, xv);
  REQUIRE(B.has_value());
  CochainComplex K = koszul(*B, {B->var_image[0]});
  CHECK(K.lo() == -1);
  CHECK(K.hi() == 0);
  auto h = K.homology_dims();
  CHECK(h[-1] == 1);
  CHECK(h[0] == 1);

  CochainComplex K0 = koszul(*B, {});
  CHECK(K0.lo() == 0);
  CHECK(K0.dim(0) == 2);
}

TEST_CASE("periodic unfolding of a two term complex") {
  Field F = Field::rationals();
  CochainComplex two(F, -1, {2, 3}, {Matrix(F, 3, 2)});
  auto pu = periodic_unfold(two, -3, 4);
  for (int n = -3; n <= 4; ++n) CHECK(pu.at(n) == (((n % 2) + 2) % 2 == 0 ? 3 : 2));
}

TEST_CASE("serialization round trip") {
  Field F = Field::rationals();
  Matrix d0(F, 3, 2);
  d0.set(0, 0, F.from_long(2));
  d0.set(2, 1, F.parse("-1/3"));
  CochainComplex c(F, -2, {2, 3, 4}, {d0, Matrix(F, 4, 3)});
  std::stringstream ss;
  c.write(ss);
  CochainComplex r = CochainComplex::read(ss);
  CHECK(r.lo() == c.lo());
  CHECK(r.hi() == c.hi());
  for (int d = -2; d <= 0; ++d) CHECK(r.dim(d) == c.dim(d));
  CHECK(r.diff(-2).equal(c.diff(-2)));
}

TEST_CASE("truncation seam accounting") {
  // cutting at q only moves rank(d^q) between the seam homologies
  Field F = Field::rationals();
  Matrix d(F, 2, 2);
  d.set(0, 0, F.one());
  CochainComplex c(F, 0, {2, 2}, {d});
  auto h = c.homology_dims();
  auto hle = c.truncate_le(0).homology_dims();
  auto hgt = c.truncate_gt(0).homology_dims();
  int r = rank(c.diff(0));
  CHECK(hle[0] == h[0] + r);
  CHECK(hgt[1] == h[1] + r);
}
