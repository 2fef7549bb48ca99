#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "singhh/algebra.hpp"
#include "singhh/errors.hpp"
#include "test_helpers.hpp"

using namespace singhh;
using testers::kxm;

TEST_CASE("truncated polynomial algebra basics") {
  Algebra A = kxm(3);
  CHECK(A.dim() == 3);
  CHECK(A.is_commutative());
  CHECK(A.center_basis().size() == 3);
  CHECK(A.derivation_dim() == 2);
  CHECK(A.inner_derivation_dim() == 0);

  // x * x = x^2, x^2 * x = 0
  Field F = A.field();
  DenseVec x{F.zero(), F.one(), F.zero()};
  DenseVec xx = A.mul(x, x);
  CHECK(F.is_zero(xx[0]));
  CHECK(F.is_zero(xx[1]));
  CHECK(F.equal(xx[2], F.one()));
  CHECK(A.left_mult(x).equal(A.right_mult(x)));
}

TEST_CASE("associativity violations are caught") {
  Field F = Field::rationals();
  // b1 * b1 = b0 breaks associativity once b0 is no longer a unit
  std::vector<std::vector<SparseVec>> table{
      {{{0, F.one()}}, {{1, F.one()}}},
      {{{1, F.one()}}, {{0, F.one()}, {1, F.one()}}},
  };
  CHECK_NOTHROW(Algebra(F, {"1", "t"}, table, {F.one(), F.zero()}, "ok"));
  std::vector<std::vector<SparseVec>> bad{
      {{{0, F.one()}}, {{1, F.one()}}},
      {{{0, F.one()}}, {{0, F.one()}, {1, F.one()}}},
  };
  try {
    Algebra(F, {"1", "t"}, bad, {F.one(), F.zero()}, "bad");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Input);
  }
}

TEST_CASE("unit axiom violations are caught") {
  Field F = Field::rationals();
  std::vector<std::vector<SparseVec>> table{{{}}};
  CHECK_THROWS_AS(Algebra(F, {"1"}, table, {F.one()}, "nounit"), Error);
}

TEST_CASE("enveloping algebra of a commutative algebra") {
  Algebra A = kxm(2);
  Algebra E = Algebra::enveloping(A);
  CHECK(E.dim() == 4);
  CHECK(E.is_commutative());
  // the two tensor legs multiply independently
  Field F = E.field();
  DenseVec a(4, F.zero()), b(4, F.zero());
  a[Algebra::pair_index(1, 0, 2)] = F.one();
  b[Algebra::pair_index(0, 1, 2)] = F.one();
  DenseVec ab = E.mul(a, b);
  CHECK(F.equal(ab[Algebra::pair_index(1, 1, 2)], F.one()));
  DenseVec aa = E.mul(a, a);
  for (const Scalar& c : aa) CHECK(F.is_zero(c));
}

TEST_CASE("file round trip") {
  Algebra A = kxm(3);
  std::ostringstream os;
  A.write(os);
  std::istringstream is(os.str());
  Algebra B = Algebra::read(is);
  CHECK(B.dim() == A.dim());
  CHECK(B.name() == A.name());
  CHECK(B.labels() == A.labels());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(B.table(i, j) == A.table(i, j));
}

TEST_CASE("malformed algebra files") {
  auto reject = [](const std::string& text, ErrorKind kind) {
    std::istringstream is(text);
    try {
      Algebra::read(is);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == kind);
    }
  };
  reject("algebra a\nfield rationals\ndim 1\nlabels 1\nunit 1\ntable\n", ErrorKind::Input);
  reject("algebra a\nfield rationals\ndim 1\nlabels 1\nunit 1\ntable\n5 0 0 1\nend\n",
         ErrorKind::Input);
  reject("algebra a\nfield gf 4\ndim 1\nlabels 1\nunit 1\ntable\n0 0 0 1\nend\n",
         ErrorKind::Input);
  reject("nonsense\n", ErrorKind::Input);
  CHECK_THROWS_AS(Algebra::read_file("/nonexistent/path.alg"), Error);
  try {
    Algebra::read_file("/nonexistent/path.alg");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}

TEST_CASE("center of a noncommutative algebra") {
  // 2x2 upper triangular matrices: basis e11, e12, e22
  Field F = Field::rationals();
  auto sv = [&](std::initializer_list<std::pair<int, long>> entries) {
    SparseVec v;
    for (auto [i, c] : entries) v.push_back({i, F.from_long(c)});
    return v;
  };
  std::vector<std::vector<SparseVec>> table{
      {sv({{0, 1}}), sv({{1, 1}}), sv({})},
      {sv({}), sv({}), sv({{1, 1}})},
      {sv({}), sv({}), sv({{2, 1}})},
  };
  Algebra T(F, {"e11", "e12", "e22"}, table, {F.one(), F.zero(), F.one()}, "upper");
  CHECK(!T.is_commutative());
  CHECK(T.center_basis().size() == 1);
  // every derivation of the triangular algebra is inner
  CHECK(T.derivation_dim() == 2);
  CHECK(T.inner_derivation_dim() == 2);
}
