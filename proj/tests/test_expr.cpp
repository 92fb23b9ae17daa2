#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "iwave/errors.hpp"
#include "iwave/expr.hpp"

using namespace iwave;

TEST_CASE("arithmetic and precedence") {
  Expr e = Expr::parse("1 + 2*3 - 4/2", {});
  CHECK(e.eval({}) == doctest::Approx(5.0));
  CHECK(Expr::parse("2^3^2", {}).eval({}) == doctest::Approx(512.0));  // right assoc
  CHECK(Expr::parse("-2^2", {}).eval({}) == doctest::Approx(-4.0));
  CHECK(Expr::parse("(1+2)*(3-5)", {}).eval({}) == doctest::Approx(-6.0));
}

TEST_CASE("variables and functions") {
  Expr e = Expr::parse("x^2 - y^2", {"x", "y"});
  double v[] = {3.0, 2.0};
  CHECK(e.eval(v) == doctest::Approx(5.0));

  Expr trig = Expr::parse("sin(theta)*cos(theta)", {"theta"});
  double t[] = {0.7};
  CHECK(trig.eval(t) == doctest::Approx(std::sin(0.7) * std::cos(0.7)));

  Expr ex = Expr::parse("exp(-1/(1-u^2))", {"u"});
  double u[] = {0.0};
  CHECK(ex.eval(u) == doctest::Approx(std::exp(-1.0)));
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(Expr::parse("x +", {"x"}), ConfigError);
  CHECK_THROWS_AS(Expr::parse("unknown_name", {"x"}), ConfigError);
  CHECK_THROWS_AS(Expr::parse("sin x", {"x"}), ConfigError);
  CHECK_THROWS_AS(Expr::parse("(1+2", {}), ConfigError);
}
