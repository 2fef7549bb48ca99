#include <string>
#include <vector>

#include "doctest.h"
#include "singhh/errors.hpp"
#include "singhh/poly.hpp"
#include "test_helpers.hpp"

using namespace singhh;
using testers::P;

static const std::vector<std::string> XY{"x", "y"};

TEST_CASE("parse and print round trip") {
  MultiPoly f = P("x^3 - 2*x*y + 1/2*y^2 - 7", XY);
  CHECK(P(f.to_string(XY), XY).equal(f));
  CHECK(P("x^2-y", XY).equal(P("-y+x^2", XY)));
  CHECK(P("0", XY).is_zero());
  CHECK(P("x-x", XY).is_zero());
  CHECK(MultiPoly(Field::rationals(), 2).to_string(XY) == "0");
}

TEST_CASE("arithmetic identities") {
  MultiPoly f = P("x^2+y", XY), g = P("x-y^3", XY);
  CHECK(f.mul(g).equal(g.mul(f)));
  CHECK(f.add(g).sub(g).equal(f));
  CHECK(f.sub(f).is_zero());
  CHECK(f.neg().add(f).is_zero());
  CHECK(f.pow(3).equal(f.mul(f).mul(f)));
  CHECK(f.mul(g).total_degree() == f.total_degree() + g.total_degree());
  CHECK(P("x+y", XY).pow(2).equal(P("x^2+2*x*y+y^2", XY)));
}

TEST_CASE("derivative and jacobian") {
  MultiPoly q = P("x^3+y^3", XY);
  CHECK(q.derivative(0).equal(P("3*x^2", XY)));
  CHECK(q.derivative(1).equal(P("3*y^2", XY)));
  auto jac = jacobian(P("x^4+y^5+x^2*y^3", XY));
  REQUIRE(jac.size() == 2);
  CHECK(jac[0].equal(P("4*x^3+2*x*y^3", XY)));
  CHECK(jac[1].equal(P("5*y^4+3*x^2*y^2", XY)));
}

TEST_CASE("monomial orders disagree where they should") {
  Exps a{3, 0}, b{0, 4};  // x^3 vs y^4
  CHECK(MonomialOrder::lex().greater(a, b));
  CHECK(MonomialOrder::grevlex().less(a, b));
  CHECK(MonomialOrder::graded_lex().less(a, b));

  Exps c{1, 2}, d{2, 1};  // same degree
  CHECK(MonomialOrder::grevlex().less(c, d));
  CHECK(MonomialOrder::lex().less(c, d));

  // grevlex and gradedlex split on x*z^2 vs y^2*z
  Exps e{1, 0, 2}, f{0, 2, 1};
  CHECK(MonomialOrder::grevlex().less(e, f));
  CHECK(MonomialOrder::graded_lex().greater(e, f));
}

TEST_CASE("order parsing and leading terms") {
  CHECK(MonomialOrder::parse("lex").kind == MonomialOrder::Kind::Lex);
  CHECK(MonomialOrder::parse("grevlex").kind == MonomialOrder::Kind::Grevlex);
  CHECK_THROWS_AS(MonomialOrder::parse("mystery"), Error);

  MultiPoly f = P("x^3+x*y^3", XY);
  auto [le, lc] = f.leading_term(MonomialOrder::lex());
  CHECK(le == Exps{3, 0});
  auto [ge, gc] = f.leading_term(MonomialOrder::grevlex());
  CHECK(ge == Exps{1, 3});
  CHECK(Field::rationals().equal(lc, gc));
}

TEST_CASE("exponent helpers") {
  Exps a{2, 1}, b{1, 3};
  CHECK(exps_degree(a) == 3);
  CHECK(exps_mul(a, b) == Exps{3, 4});
  CHECK(exps_lcm(a, b) == Exps{2, 3});
  CHECK(exps_divides(Exps{1, 1}, a));
  CHECK(exps_divides(b, a) == false);
  CHECK(exps_divides(Exps{1, 0}, a));
  CHECK(exps_quot(a, Exps{1, 0}) == Exps{1, 1});
}

TEST_CASE("parse failures carry positions") {
  CHECK_THROWS_AS(P("x*y^", XY), Error);
  CHECK_THROWS_AS(P("x++y", XY), Error);
  CHECK_THROWS_AS(P("z", XY), Error);
  CHECK_THROWS_AS(P("", XY), Error);
  try {
    P("x*y^", XY);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Input);
  }
}

TEST_CASE("variable list parsing") {
  CHECK(parse_var_list("x,y") == XY);
  CHECK(parse_var_list("x, y") == XY);
  CHECK_THROWS_AS(parse_var_list("x,,y"), Error);
  CHECK_THROWS_AS(parse_var_list("x,x"), Error);
  CHECK_THROWS_AS(parse_var_list(""), Error);
}
