#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "hammerstein/quadrature.hpp"

using namespace hammer;

TEST_CASE("gauss_legendre two-point rule") {
  const auto& r = gauss_legendre(2);
  REQUIRE(r.size() == 2);
  CHECK(r[0].x == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r[1].x == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r[0].w == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {1, 3, 4, 8, 16}) {
    double sum = 0.0;
    for (const auto& q : gauss_legendre(n)) sum += q.w * std::pow(q.x, 2 * n - 2);
    CHECK(sum == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
  }
}

TEST_CASE("integrate trivial integrands") {
  QuadratureRule rule;
  CHECK(integrate(rule, [](double) { return 1.0; }, 0.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate(rule, [](double s) { return 1.0 - s; }, 0.0, 1.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
  CHECK(integrate(rule, [](double) { return 1.0; }, 0.3, 0.3) == 0.0);
  CHECK_THROWS_AS(integrate(rule, [](double) { return 1.0; }, 0.6, 0.2),
                  DomainError);
}

TEST_CASE("integrate elliptic-type integrand against the closed form") {
  // int_0^1 e^{2(1-s)} (1-s) ds = (e^2 + 1)/4
  const double exact = (std::exp(2.0) + 1.0) / 4.0;
  const double got = integrate(
      {}, [](double s) { return std::exp(2.0 * (1.0 - s)) * (1.0 - s); }, 0.0,
      1.0);
  CHECK(got == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("doubling panels shows the rule's order on e^x") {
  const double exact = std::exp(1.0) - 1.0;
  auto err = [&](int panels) {
    QuadratureRule rule(panels, 2);
    return std::abs(integrate(rule, [](double x) { return std::exp(x); }, 0.0,
                              1.0) -
                    exact);
  };
  // the h^6 term of e^x has the sign of the h^4 term, so the observed
  // order approaches 4 from below
  for (int p : {2, 4, 8}) {
    const double order = std::log2(err(p) / err(2 * p));
    CHECK(order >= 3.95);
  }
}

TEST_CASE("breakpoint splitting integrates |1/2 - s| exactly") {
  QuadratureRule rule(3, 2, {0.5});
  const double got =
      integrate(rule, [](double s) { return std::abs(0.5 - s); }, 0.0, 1.0);
  CHECK(std::abs(got - 0.25) < 1e-12);
  // the same kink passed as an extra point
  QuadratureRule plain(3, 2);
  const std::vector<double> extra{0.5};
  CHECK(std::abs(integrate(plain, [](double s) { return std::abs(0.5 - s); },
                           0.0, 1.0, extra) -
                 0.25) < 1e-12);
}

TEST_CASE("cell_edges include breakpoints and the bounds") {
  QuadratureRule rule(2, 4, {0.3});
  const auto e = cell_edges(rule, 0.0, 1.0);
  CHECK(e == std::vector<double>{0.0, 0.3, 0.5, 1.0});
  const auto inner = cell_edges(rule, 0.1, 0.4);
  CHECK(inner == std::vector<double>{0.1, 0.3, 0.4});
}

TEST_CASE("quadrature weights sum to the interval length") {
  QuadratureRule rule(7, 5, {0.11, 0.77});
  double sum = 0.0;
  for (const auto& q : quadrature_nodes(rule, 0.2, 0.9)) sum += q.w;
  CHECK(sum == doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("sup_inf_over_t examples") {
  auto a = sup_inf_over_t([](double t) { return t; }, 0.0, 1.0, Extremum::Sup);
  CHECK(a.value == doctest::Approx(1.0));
  CHECK(a.location == doctest::Approx(1.0));

  auto b = sup_inf_over_t([](double t) { return 3.0 / 32.0 - t * t / 2.0; },
                          0.0, 0.25, Extremum::Inf);
  CHECK(b.value == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
  CHECK(b.location == doctest::Approx(0.25));

  // F is decreasing on [0,1/4], so the infimum is F(1/4)
  auto F = [](double t) {
    return std::exp(2.0) / 8.0 * (-2.0 * std::exp(-2.0 * t) - 4.0 * t + 3.0);
  };
  auto c = sup_inf_over_t(F, 0.0, 0.25, Extremum::Inf);
  CHECK(c.value == doctest::Approx(F(0.25)).epsilon(1e-12));
  CHECK(c.location == doctest::Approx(0.25));
}

TEST_CASE("sup_inf_over_t refines an interior maximum") {
  auto r = sup_inf_over_t([](double t) { return -(t - 0.3137) * (t - 0.3137); },
                          0.0, 1.0, Extremum::Sup, 16);
  CHECK(r.location == doctest::Approx(0.3137).epsilon(1e-6));
  CHECK(r.value == doctest::Approx(0.0));
  CHECK_THROWS_AS(
      sup_inf_over_t([](double t) { return t; }, 1.0, 0.0, Extremum::Sup),
      DomainError);
}

namespace {

// transformed k_1 with beta1 = -1, eta = 1/2
double k1(double t, double s) {
  double v = (1.0 - s) / 2.0;
  if (s <= 0.5) v += 0.5 * (0.5 - s);
  if (s <= t) v -= t - s;
  return v;
}

}  // namespace

TEST_CASE("elliptic 1/m_1 integrand") {
  // sup_t int_0^1 |k_1(t,s)| e^{2(1-s)} ds with the kinks at s = t, 1/2 and
  // the zero of k_1 passed as extra points; oracle is a fine trapezoid rule
  auto F = [](double t) {
    const std::vector<double> extra{t, 0.5, std::clamp(2.0 * t - 1.0, 0.0, 1.0)};
    return integrate({}, [t](double s) { return std::abs(k1(t, s)) * std::exp(2.0 * (1.0 - s)); },
                     0.0, 1.0, extra);
  };
  auto r = sup_inf_over_t(F, 0.0, 1.0, Extremum::Sup);
  double oracle = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double t = i / 400.0;
    const int n = 200001;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      const double s = static_cast<double>(j) / (n - 1);
      const double w = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      sum += w * std::abs(k1(t, s)) * std::exp(2.0 * (1.0 - s));
    }
    oracle = std::max(oracle, sum / (n - 1));
  }
  CHECK(r.value == doctest::Approx(oracle).epsilon(1e-5));
  CHECK(std::abs(r.value - 1.0 / 0.72) <= 0.01);
}

TEST_SUITE("published examples") {
  TEST_CASE("elliptic 1/M_1 infimum is 1/2.16") {
    auto F = [](double t) {
      return std::exp(2.0) / 8.0 * (-2.0 * std::exp(-2.0 * t) - 4.0 * t + 3.0);
    };
    auto c = sup_inf_over_t(F, 0.0, 0.25, Extremum::Inf);
    CHECK(std::abs(c.value - 1.0 / 2.16) <= 0.01);
  }
}
