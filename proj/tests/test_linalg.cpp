#include <vector>

#include "doctest.h"
#include "singhh/linalg.hpp"

using namespace singhh;

namespace {

Matrix from_ints(const Field& F, const std::vector<std::vector<long>>& rows) {
  std::vector<DenseVec> dense;
  for (const auto& r : rows) {
    DenseVec v;
    for (long x : r) v.push_back(F.from_long(x));
    dense.push_back(std::move(v));
  }
  return Matrix::from_rows(F, dense);
}

}  // namespace

TEST_CASE("elimination on a known matrix") {
  Field F = Field::rationals();
  Matrix a = from_ints(F, {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(a) == 2);
  CHECK(cokernel_dim(a) == 1);
  RankKernel rk = rank_and_kernel(a);
  CHECK(rk.rank == 2);
  REQUIRE(rk.kernel.size() == 1);
  // kernel vector really lies in the kernel
  DenseVec img = a.apply(rk.kernel[0]);
  for (const Scalar& c : img) CHECK(F.is_zero(c));
}

TEST_CASE("solve and multi_solve") {
  Field F = Field::rationals();
  Matrix a = from_ints(F, {{2, 1}, {1, 3}});
  DenseVec b{F.from_long(5), F.from_long(10)};
  auto x = solve(a, b);
  REQUIRE(x.has_value());
  CHECK(F.equal((*x)[0], F.parse("1")));
  CHECK(F.equal((*x)[1], F.parse("3")));

  Matrix sing = from_ints(F, {{1, 1}, {1, 1}});
  DenseVec bad{F.one(), F.zero()};
  CHECK(!solve(sing, bad).has_value());

  auto X = multi_solve(a, Matrix::identity(F, 2));
  REQUIRE(X.has_value());
  CHECK(a.mul(*X).equal(Matrix::identity(F, 2)));
}

TEST_CASE("span helpers") {
  Field F = Field::rationals();
  std::vector<DenseVec> vecs{{F.one(), F.zero()}, {F.one(), F.one()}};
  CHECK(span_rank(F, vecs, 2) == 2);
  CHECK(in_span(F, vecs, {F.from_long(3), F.from_long(2)}));
  std::vector<DenseVec> line{{F.one(), F.one()}};
  CHECK(!in_span(F, line, {F.one(), F.zero()}));
}

TEST_CASE("prime field elimination") {
  Field F5 = Field::prime(5);
  Matrix a = from_ints(F5, {{2, 3}, {4, 1}});
  // second row = 2 * first row mod 5
  CHECK(rank(a) == 1);
  CHECK(rank_and_kernel(a).kernel.size() == 1);
}

TEST_CASE("rank is invariant under the thread count") {
  Field F = Field::rationals();
  Matrix a = from_ints(F, {{1, 2, 3, 4}, {5, 6, 7, 8}, {9, 10, 11, 12}, {13, 14, 15, 17}});
  set_thread_count(1);
  int r1 = rank(a);
  set_thread_count(4);
  int r4 = rank(a);
  set_thread_count(1);
  CHECK(r1 == r4);
  CHECK(r1 == 3);
}

TEST_CASE("block and kron helpers") {
  Field F = Field::rationals();
  Matrix a = from_ints(F, {{1, 2}, {3, 4}});
  Matrix b = Matrix::identity(F, 2);
  Matrix h = Matrix::hstack(a, b);
  CHECK(h.rows() == 2);
  CHECK(h.cols() == 4);
  Matrix v = Matrix::vstack(a, b);
  CHECK(v.rows() == 4);
  CHECK(rank(v) == 2);
  Matrix k = Matrix::kron(a, b);
  CHECK(k.rows() == 4);
  CHECK(F.equal(k.get(0, 0), F.one()));
  CHECK(F.equal(k.get(2, 0), F.from_long(3)));
  CHECK(a.transpose().transpose().equal(a));
}
