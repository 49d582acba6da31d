#include <cmath>
#include <vector>

#include "doctest.h"
#include "hammerstein/envelopes.hpp"

using namespace hammer;

namespace {

Functional square_at(double t) {
  Functional H;
  H.points = {{t, 0}};
  H.h = [](std::span<const double> x) { return x[0] * x[0]; };
  return H;
}

}  // namespace

TEST_CASE("reactor inf f on [rho1, rho1/c]") {
  const double mu = 0.9, rho = 71.0 / 1000.0, c = std::exp(-1.0 / 3.0);
  auto f = Nonlinearity::scalar([mu](double, double u) {
    return u < 2.2 ? mu * (2.2 - u) * std::exp(u) : 0.0;
  });
  auto r = box_extremum(f, {0, 1}, {rho, rho / c}, std::nullopt, rho,
                        Extremum::Inf);
  // f is increasing below u = 6/5, so the infimum sits at rho
  const double exact = mu * (2.2 - rho) * std::exp(rho);
  CHECK(r.raw == doctest::Approx(exact).epsilon(1e-12));
  CHECK(std::abs(r.raw - 2.057) <= 0.005);
  CHECK(r.value == doctest::Approx(exact / rho).epsilon(1e-12));
  CHECK(r.u == doctest::Approx(rho));
}

TEST_CASE("thermostat sup f on [0,1] x [-1/3,1/3]") {
  auto f = Nonlinearity::scalar(
      [](double t, double u) { return t * t * u * u + 2 * std::abs(u) + 0.1; });
  auto r = box_extremum(f, {0, 1}, {-1.0 / 3.0, 1.0 / 3.0}, std::nullopt,
                        1.0 / 3.0, Extremum::Sup);
  CHECK(r.raw == doctest::Approx(79.0 / 90.0).epsilon(1e-12));
  CHECK(std::abs(r.raw - 0.88) <= 0.005);
  CHECK(r.t == 1.0);
}

TEST_CASE("f equal to zero") {
  auto f = Nonlinearity::zero();
  for (auto mode : {Extremum::Sup, Extremum::Inf}) {
    auto r = box_extremum(f, {0, 1}, {-2, 3}, std::nullopt, 1.0, mode);
    CHECK(r.value == 0.0);
    CHECK(r.raw == 0.0);
  }
}

TEST_CASE("box_extremum bounds every sampled point") {
  auto f = Nonlinearity::coupled([](double t, double u, double v) {
    return std::sin(3 * t + u) * std::cos(v) + u * v;
  });
  const Interval T{0.1, 0.8}, U{-1, 2}, V{0, 1.5};
  const double rho = 2.0;
  auto sup = box_extremum(f, T, U, V, rho, Extremum::Sup, 64);
  auto inf = box_extremum(f, T, U, V, rho, Extremum::Inf, 64);
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j)
      for (int k = 0; k <= 20; ++k) {
        const double t = T.lo + T.width() * i / 20;
        const double u = U.lo + U.width() * j / 20;
        const double v = V.lo + V.width() * k / 20;
        CHECK(sup.value >= f(t, u, v) / rho - 1e-12);
        CHECK(inf.value <= f(t, u, v) / rho + 1e-12);
      }
}

TEST_CASE("affine f attains its extremum at a corner") {
  auto f = Nonlinearity::scalar([](double t, double u) { return (1 + t) * u - 3 * t; });
  auto sup = box_extremum(f, {0, 1}, {-1, 2}, std::nullopt, 1.0, Extremum::Sup, 7);
  CHECK(sup.raw == 2.0);
  auto inf = box_extremum(f, {0, 1}, {-1, 2}, std::nullopt, 1.0, Extremum::Inf, 7);
  CHECK(inf.raw == -2.0 - 3.0);
}

TEST_CASE("box_extremum rejects bad radii and boxes") {
  auto f = Nonlinearity::zero();
  CHECK_THROWS_AS(box_extremum(f, {0, 1}, {0, 1}, std::nullopt, 0.0, Extremum::Sup),
                  DomainError);
  CHECK_THROWS_AS(box_extremum(f, {0, 1}, {1, 0}, std::nullopt, 1.0, Extremum::Sup),
                  DomainError);
}

TEST_CASE("thermostat domination at most") {
  const StieltjesMeasure A[] = {StieltjesMeasure::point(0.2, 0.5)};
  const Interval box[] = {{1.0 / 6.0, 1.0 / 3.0}};
  auto r = domination_check(square_at(0.2), A, box, Domination::AtMost);
  CHECK(r.passed());
  // 0.5 x - x^2 is smallest at x = 1/3
  CHECK(r.at("margin") == doctest::Approx(1.0 / 6.0 - 1.0 / 9.0).epsilon(1e-12));
}

TEST_CASE("beam domination at least") {
  const StieltjesMeasure A[] = {StieltjesMeasure::point(0.75, 0.5)};
  const Interval box[] = {{5.0, 16.0}};
  CHECK(domination_check(square_at(0.75), A, box, Domination::AtLeast).passed());
  const Interval low[] = {{0.1, 0.4}};
  CHECK_FALSE(domination_check(square_at(0.75), A, low, Domination::AtLeast).passed());
}

TEST_CASE("zero functional with zero measure") {
  const StieltjesMeasure A[] = {StieltjesMeasure{}};
  for (auto d : {Domination::AtMost, Domination::AtLeast}) {
    auto r = domination_check(Functional::zero(), A, {}, d);
    CHECK(r.passed());
    CHECK(r.at("margin") == 0.0);
  }
}

TEST_CASE("domination needs matching atoms and point structure") {
  const StieltjesMeasure off[] = {StieltjesMeasure::point(0.3, 0.5)};
  const Interval box[] = {{0.0, 1.0}};
  CHECK_THROWS_AS(domination_check(square_at(0.2), off, box, Domination::AtMost),
                  SpecificationError);
  const StieltjesMeasure dens[] = {
      StieltjesMeasure({}, Density{[](double) { return 1.0; }, {}})};
  CHECK(domination_check(square_at(0.2), dens, box, Domination::AtMost).verdict() ==
        Verdict::NotCheckable);
  Functional general;
  general.general = [](const RealFn& u, const RealFn&) { return u(0.5); };
  const StieltjesMeasure A[] = {StieltjesMeasure::point(0.5, 1.0)};
  CHECK(domination_check(general, A, {}, Domination::AtMost).verdict() ==
        Verdict::NotCheckable);
}

TEST_CASE("Functional evaluation") {
  auto H = square_at(0.5);
  CHECK(H.evaluate([](double t) { return 4 * t; }) == 4.0);
  const double xs[] = {3.0};
  CHECK(H.at_values(xs) == 9.0);
  CHECK(Functional::zero().evaluate([](double) { return 7.0; }) == 0.0);
}
