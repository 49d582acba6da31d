#include <cmath>

#include "doctest.h"
#include "hammerstein/expression.hpp"

using namespace hammer;

TEST_CASE("arithmetic and precedence") {
  CHECK(evaluate_constant("1 + 2*3") == 7.0);
  CHECK(evaluate_constant("(1 + 2)*3") == 9.0);
  CHECK(evaluate_constant("2^3^2") == 512.0);
  CHECK(evaluate_constant("2**3") == 8.0);
  CHECK(evaluate_constant("-2^2") == -4.0);
  CHECK(evaluate_constant("10^(-3/2)") == doctest::Approx(std::pow(10.0, -1.5)));
  CHECK(evaluate_constant("71/1000") == doctest::Approx(0.071));
  CHECK(evaluate_constant("e^(3/4)") == doctest::Approx(std::exp(0.75)));
  CHECK(evaluate_constant("pi") == doctest::Approx(M_PI));
  CHECK(evaluate_constant("1e-3 + 2.5E2") == doctest::Approx(250.001));
}

TEST_CASE("functions") {
  CHECK(evaluate_constant("pos(-3) + pos(2)") == 2.0);
  CHECK(evaluate_constant("abs(-1.5)") == 1.5);
  CHECK(evaluate_constant("min(3, 1, 2) + max(4, 6)") == 7.0);
  CHECK(evaluate_constant("step(0) + step(-1)") == 1.0);
  CHECK(evaluate_constant("if(1 < 2, 10, 20)") == 10.0);
  CHECK(evaluate_constant("2 > 3 ? 1 : 0") == 0.0);
  CHECK(evaluate_constant("sqrt(16) + cbrt(27) + ln(e) + log(1)") == doctest::Approx(8.0));
  CHECK(evaluate_constant("pow(2, 10)") == 1024.0);
  CHECK(evaluate_constant("!(1 && 0) || 0") == 1.0);
}

TEST_CASE("variables and constants") {
  auto f = Expression::compile("mu*pos(11/5 - u)*exp(u)", {"t", "u"}, {{"mu", 0.9}});
  CHECK(f({0.0, 0.071}) == doctest::Approx(0.9 * (2.2 - 0.071) * std::exp(0.071)));
  CHECK(f({0.0, 3.0}) == 0.0);
  CHECK_FALSE(f.uses(0));
  CHECK(f.uses(1));
  CHECK(f.arity() == 2);
}

TEST_CASE("errors carry a column") {
  try {
    Expression::compile("1 + * 2", {});
    FAIL("expected an error");
  } catch (const ExpressionError& e) {
    CHECK(e.column() >= 1);
  }
  CHECK_THROWS_AS(Expression::compile("x + 1", {"t"}), ExpressionError);
  CHECK_THROWS_AS(Expression::compile("foo(2)", {}), ExpressionError);
  CHECK_THROWS_AS(Expression::compile("(1 + 2", {}), ExpressionError);
  CHECK_THROWS_AS(Expression::compile("min()", {}), ExpressionError);
}

TEST_CASE("substitute works on identifiers only") {
  CHECK(substitute("t + t2 + exp(t)", "t", "1-s") == "(1-s) + t2 + exp((1-s))");
  CHECK(substitute("r*exp(r)", "exp", "x") == "r*exp(r)");
  auto g = Expression::compile(substitute("1/4 + r", "r", "exp(1 - t)"), {"t"});
  CHECK(g({0.0}) == doctest::Approx(0.25 + std::exp(1.0)));
}
