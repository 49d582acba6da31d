#include <cmath>

#include "doctest.h"
#include "hammerstein/kernels.hpp"
#include "hammerstein/measures.hpp"

using namespace hammer;

TEST_CASE("apply on the reactor gamma") {
  const auto b = builtin("reactor", {{"lambda", 1.0 / 3.0}});
  const auto A = StieltjesMeasure::point(0.5, 0.1);
  const double v = A.apply(b.gammas[0].gamma);
  CHECK(std::abs(v - 0.254) <= 0.001);
  CHECK(v == doctest::Approx(0.3 * std::exp(-1.0 / 6.0)).epsilon(1e-15));
}

TEST_CASE("apply on the beam gamma") {
  const auto b = builtin("cantilever", {{"a", 0.5}, {"b", 1.0}});
  const auto A = StieltjesMeasure::point(0.75, 3.0);
  const double v = A.apply(b.gammas[0].gamma);
  CHECK(std::abs(v - 0.633) <= 0.001);
  CHECK(v == doctest::Approx(81.0 / 128.0).epsilon(1e-15));
}

TEST_CASE("zero measure") {
  StieltjesMeasure A;
  CHECK(A.is_zero());
  CHECK(A.apply([](double t) { return std::exp(t); }) == 0.0);
  CHECK(A.mass() == 0.0);
}

TEST_CASE("mass") {
  CHECK(StieltjesMeasure::point(0.2, 0.5).mass() == 0.5);
  StieltjesMeasure two({{1.0 / 6.0, 0.3}, {0.2, 0.3}});
  CHECK(two.mass() == doctest::Approx(0.6).epsilon(1e-15));
  StieltjesMeasure density({}, Density{[](double) { return 1.0; }, {}});
  CHECK(density.mass() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("density part uses quadrature") {
  StieltjesMeasure A({{0.0, 2.0}}, Density{[](double t) { return t; }, {}});
  // 2 u(0) + int_0^1 t e^t dt = 2 + 1
  CHECK(A.apply([](double t) { return std::exp(t); }) ==
        doctest::Approx(3.0).epsilon(1e-13));
  // step density with a breakpoint
  StieltjesMeasure S({}, Density{[](double t) { return t < 0.4 ? 0.0 : 1.0; },
                                 {0.4}});
  CHECK(S.mass() == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("atoms at the endpoints are allowed") {
  StieltjesMeasure A({{0.0, 1.0}, {1.0, 2.0}});
  CHECK(A.apply([](double t) { return 1.0 + t; }) == 5.0);
}

TEST_CASE("invalid measures") {
  CHECK_THROWS_AS(StieltjesMeasure({{1.5, 1.0}}), DomainError);
  CHECK_THROWS_AS(StieltjesMeasure({{0.5, -1.0}}), InvalidMeasure);
  CHECK_THROWS_AS(
      StieltjesMeasure({}, Density{[](double t) { return t - 0.5; }, {}}),
      InvalidMeasure);
  CHECK_THROWS_AS(StieltjesMeasure::point(0.5, 1.0).scaled(-1.0),
                  InvalidMeasure);
}

TEST_CASE("scaled and plus") {
  const auto A = StieltjesMeasure::point(0.25, 1.0);
  const auto B = StieltjesMeasure::point(0.75, 2.0);
  auto u = [](double t) { return t * t; };
  CHECK(A.scaled(3.0).apply(u) == doctest::Approx(3.0 * A.apply(u)));
  CHECK(A.plus(B).apply(u) == doctest::Approx(A.apply(u) + B.apply(u)));
}
