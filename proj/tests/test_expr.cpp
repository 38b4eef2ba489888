#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "svcalc/expr.hpp"

using namespace svcalc;

TEST_CASE("expression parsing and evaluation") {
  Expr p = Expr::parse("3*x^2 - 2*x + 1", {"x"});
  CHECK(p(2.0) == 9.0);
  CHECK(p(0.0) == 1.0);

  Expr trig = Expr::parse("sin(t) + cos(t)", {"t"});
  CHECK(trig(0.0) == 1.0);

  Expr mm = Expr::parse("max(min(x, x^2), -1)", {"x"});
  CHECK(mm(2.0) == 2.0);
  CHECK(mm(0.5) == 0.25);
  CHECK(mm(-3.0) == -1.0);

  Expr two = Expr::parse("x*y/abs(y)", {"x", "y"});
  CHECK(two(3.0, -2.0) == -3.0);

  // single-variable expressions answer to the common aliases
  CHECK(Expr::parse("r + 1", {"t"})(1.5) == 2.5);
  CHECK(Expr::parse("exp(0) + pi", {"x"})(0.0) == doctest::Approx(4.14159265358979).epsilon(1e-14));

  // unary minus and right-associative powers
  CHECK(Expr::parse("-x^2", {"x"})(3.0) == -9.0);
  CHECK(Expr::parse("2^3^1", {"x"})(0.0) == 8.0);
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(Expr::parse("2 +", {"x"}), ExprError);
  CHECK_THROWS_AS(Expr::parse("sin(x", {"x"}), ExprError);
  CHECK_THROWS_AS(Expr::parse("q + 1", {"x"}), ExprError);
  CHECK_THROWS_AS(Expr::parse("min(x)", {"x"}), ExprError);
  CHECK_THROWS_AS(Expr::parse("x 1", {"x"}), ExprError);
  try {
    Expr::parse("x + &", {"x"});
  } catch (const ExprError& e) {
    CHECK(e.position == 4);
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
  }
}
