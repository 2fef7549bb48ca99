#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "singhh/errors.hpp"
#include "singhh/mfactor.hpp"
#include "test_helpers.hpp"

using namespace singhh;
using testers::P;

static const std::vector<std::string> X{"x"};
static const std::vector<std::string> XY{"x", "y"};

namespace {

using PolyMat = std::vector<std::vector<MultiPoly>>;

MatrixFactorization univariate(int a, int m) {
  MultiPoly q = P("x^" + std::to_string(m), X);
  return make_mf({{P("x^" + std::to_string(a), X)}},
                 {{P("x^" + std::to_string(m - a), X)}}, q);
}

}  // namespace

TEST_CASE("construction validates the products entrywise") {
  MultiPoly q = P("x^2", X);
  MatrixFactorization E = make_mf({{P("x", X)}}, {{P("x", X)}}, q);
  CHECK(E.size() == 1);
  CHECK(E.potential().equal(q));

  try {
    make_mf({{P("x", XY)}}, {{P("y", XY)}}, P("x^2", XY));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Input);
    CHECK(std::string(e.what()).find("(0, 0)") != std::string::npos);
  }
  CHECK_THROWS_AS(make_mf({{P("x", X)}, {P("x", X)}}, {{P("x", X)}}, q), Error);
  CHECK_THROWS_AS(make_mf({{P("x", XY)}}, {{P("x", XY)}}, P("x^2", X)), Error);
}

TEST_CASE("univariate pairs follow the closed form") {
  // hom of x^a against x^b over x^m has dimension min(a, b, m-a, m-b) in both
  // parities
  for (int m = 2; m <= 4; ++m)
    for (int a = 1; a < m; ++a)
      for (int b = 1; b < m; ++b) {
        auto [even, odd] = mf_hom_cohomology(univariate(a, m), univariate(b, m));
        int want = std::min({a, b, m - a, m - b});
        CHECK(even == want);
        CHECK(odd == want);
      }
}

TEST_CASE("the trivial factorization is invisible") {
  MultiPoly q = P("x^3", X);
  MatrixFactorization T = MatrixFactorization::trivial(q);
  auto [e1, o1] = mf_hom_cohomology(T, univariate(1, 3));
  CHECK(e1 == 0);
  CHECK(o1 == 0);
  auto [e2, o2] = mf_hom_cohomology(univariate(1, 3), T);
  CHECK(e2 == 0);
  CHECK(o2 == 0);
  auto [e3, o3] = mf_hom_cohomology(T, T);
  CHECK(e3 == 0);
  CHECK(o3 == 0);
}

TEST_CASE("node branches and the parity swap under shift") {
  MultiPoly q = P("x*y", XY);
  MatrixFactorization B1 = make_mf({{P("x", XY)}}, {{P("y", XY)}}, q);
  MatrixFactorization B2 = make_mf({{P("y", XY)}}, {{P("x", XY)}}, q);

  auto [se, so] = mf_hom_cohomology(B1, B1);
  CHECK(se == 1);
  CHECK(so == 0);
  auto [ce, co] = mf_hom_cohomology(B1, B2);
  CHECK(ce == 0);
  CHECK(co == 1);

  // shifting either side swaps the parities; shifting both restores them
  auto [e1, o1] = mf_hom_cohomology(B1.shift(), B1);
  CHECK(e1 == 0);
  CHECK(o1 == 1);
  auto [e2, o2] = mf_hom_cohomology(B1, B1.shift());
  CHECK(e2 == 0);
  CHECK(o2 == 1);
  auto [e3, o3] = mf_hom_cohomology(B1.shift(), B1.shift());
  CHECK(e3 == 1);
  CHECK(o3 == 0);
  CHECK(B2.shift().potential().equal(q));
}

TEST_CASE("rank two factorization of the cusp") {
  MultiPoly q = P("x^3-y^2", XY);
  PolyMat phi{{P("y", XY), P("x^2", XY)}, {P("x", XY), P("y", XY)}};
  PolyMat psi{{P("-y", XY), P("x^2", XY)}, {P("x", XY), P("-y", XY)}};
  MatrixFactorization E = make_mf(phi, psi, q);
  auto [even, odd] = mf_hom_cohomology(E, E);
  CHECK(even == 2);
  CHECK(odd == 2);
  auto [te, to] = mf_hom_cohomology(E, MatrixFactorization::trivial(q));
  CHECK(te == 0);
  CHECK(to == 0);
}

TEST_CASE("different potentials are refused") {
  CHECK_THROWS_AS(mf_hom_cohomology(univariate(1, 2), univariate(1, 3)), Error);
}

TEST_CASE("a non-isolated potential is a mathematical failure") {
  MultiPoly q = P("x^2*y^2", XY);
  // endomorphisms of coker(x) contain k[y]: infinite dimensional
  MatrixFactorization E = make_mf({{P("x", XY)}}, {{P("x*y^2", XY)}}, q);
  try {
    mf_hom_cohomology(E, E);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Math);
    CHECK(std::string(e.what()).find("isolated") != std::string::npos);
  }
  // the square pair over the same potential is an honest finite case
  MatrixFactorization S = make_mf({{P("x^2", XY)}}, {{P("y^2", XY)}}, q);
  auto hom = mf_hom_cohomology(S, S);
  CHECK(hom.first == 4);
  CHECK(hom.second == 0);
}

TEST_CASE("file round trip") {
  MultiPoly q = P("x*y", XY);
  MatrixFactorization B = make_mf({{P("x", XY)}}, {{P("y", XY)}}, q);
  std::ostringstream os;
  B.write(os, XY);
  std::istringstream is(os.str());
  MatrixFactorization R = MatrixFactorization::read(is);
  CHECK(R.size() == 1);
  CHECK(R.potential().equal(q));
  CHECK(R.var_names() == XY);
  CHECK(R.phi()[0][0].equal(P("x", XY)));
  CHECK(R.psi()[0][0].equal(P("y", XY)));
}

TEST_CASE("malformed factorization files") {
  auto reject = [](const std::string& text) {
    std::istringstream is(text);
    try {
      MatrixFactorization::read(is);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Input);
    }
  };
  reject("mf\nvars x\nfield rationals\nsize 1\npotential x^2\nphi\nx\npsi\nx\n");
  reject("mf\nvars x\nfield rationals\nsize 2\npotential x^2\nphi\nx\npsi\nx\nend\n");
  reject("mf\nvars x\nfield rationals\nsize 1\npotential x^2\nphi\nx\npsi\nx^3\nend\n");
  reject("mf\npotential x^2\nvars x\nfield rationals\nsize 1\nphi\nx\npsi\nx\nend\n");
  CHECK_THROWS_AS(MatrixFactorization::read_file("/nonexistent.mf"), Error);
}
