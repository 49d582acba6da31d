#include <cmath>
#include <random>

#include "doctest.h"
#include "hammerstein/systems.hpp"
#include "support.hpp"

using namespace hammer;

namespace {

SystemSpec zero_system() {
  auto e1 = make_equation(builtin("multipoint_k1", {{"beta1", -1.0}, {"eta", 0.5}}),
                          [](double) { return 1.0; }, Functional::zero(),
                          Functional::zero(), Nonlinearity::zero(2));
  auto e2 = make_equation(builtin("derivative_k2", {{"beta2", 0.25}, {"xi", 0.25}}),
                          [](double) { return 1.0; }, Functional::zero(),
                          Functional::zero(), Nonlinearity::zero(2));
  return make_system(e1, e2);
}

const ModelConfig& elliptic() {
  static const ModelConfig m = testing::shipped("elliptic");
  return m;
}

}  // namespace

TEST_CASE("matrix2_solve examples") {
  auto id = matrix2_solve(1, 0, 0, 1, {0.3, -2.0});
  CHECK(id[0] == 0.3);
  CHECK(id[1] == -2.0);
  auto x = matrix2_solve(1, -1, -1, 2, {1, 1});
  CHECK(x[0] == doctest::Approx(3.0));
  CHECK(x[1] == doctest::Approx(2.0));
  auto y = matrix2_solve(1, -1, -1, 2, {2, 2});
  CHECK(y[0] > x[0]);
  CHECK(y[1] > x[1]);
  CHECK_THROWS(matrix2_solve(1, -1, -1, 1, {1, 1}));
  CHECK_THROWS(matrix2_solve(1, 1, -1, 2, {1, 1}));
}

TEST_CASE("zero measures give the identity constants") {
  const auto s = zero_system();
  MeasureGrid mg;
  for (int i = 0; i < 2; ++i) {
    auto k = system_constants(s, mg, i, 1.0, 0.5);
    CHECK(k.D == 1.0);
    CHECK(k.theta[0] == 1.0);
    CHECK(k.theta[1] == 0.0);
    CHECK(k.theta[2] == 0.0);
    CHECK(k.theta[3] == 1.0);
    CHECK(k.Q == 0.0);
    CHECK(k.S == 0.0);
    CHECK(k.hypotheses_ok());
  }
}

TEST_CASE("theta identities") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> w(0.0, 0.6), t(0.0, 1.0);
  const auto s = zero_system();
  for (int rep = 0; rep < 50; ++rep) {
    MeasureGrid mg;
    for (auto& m : mg.m) m = StieltjesMeasure::point(t(rng), w(rng));
    for (int i = 0; i < 2; ++i) {
      auto k = system_constants(s, mg, i, 1.0, 1.0);
      if (!(k.D > 0.0)) continue;
      CHECK(std::abs(k.theta[0] * k.D - (1.0 - k.A2)) < 1e-12);
      CHECK(std::abs(k.theta[1] * k.D - k.A12) < 1e-12);
      CHECK(std::abs(k.theta[2] * k.D - k.A21) < 1e-12);
      CHECK(std::abs(k.theta[3] * k.D - (1.0 - k.A1)) < 1e-12);
    }
  }
}

TEST_CASE("1/m_i with zero measures is the absolute kernel integral") {
  const auto s = zero_system();
  MeasureGrid mg;
  for (int i = 0; i < 2; ++i) {
    auto k = system_constants(s, mg, i, 1.0, 1.0);
    const auto& e = s.eq[i];
    double best = 0.0;
    for (int j = 0; j <= 200; ++j) {
      const double tt = j / 200.0;
      best = std::max(best, testing::trapezoid(
                                [&](double x) { return std::abs(e.kernel(tt, x)); },
                                0.0, 1.0, 20001));
    }
    CHECK(k.inv_m == doctest::Approx(best).epsilon(1e-4));
    auto single = sup_inf_over_t(
        [&](double tt) {
          return kernel_weight_integral(e.kernel, e.g, e.g_breaks, tt, 0.0, 1.0,
                                        true, {});
        },
        0.0, 1.0, Extremum::Sup);
    CHECK(k.inv_m == doctest::Approx(single.value).epsilon(1e-12));
  }
}

TEST_CASE("sub-linear thresholds equal m_i under zero measures") {
  const auto& sys = *elliptic().system;
  auto n = system_nonexistence(sys, ReducedMeasures{}, NonexistenceMode::Sub);
  MeasureGrid mg;
  for (int i = 0; i < 2; ++i) {
    auto k = system_constants(sys, mg, i, 1.0, 1.0);
    CHECK(n.threshold[i] == doctest::Approx(k.m).epsilon(1e-12));
  }
  CHECK(std::abs(n.threshold[0] / 4.0 - 0.72) <= 0.01);
}

TEST_CASE("elliptic constants that reproduce") {
  const auto& m = elliptic();
  const auto& sys = *m.system;
  const auto& mg = m.checks.at(1).grid;
  auto k1 = system_constants(sys, mg, 0, 1.0, 0.5);
  CHECK(k1.alpha_gamma[1][0] == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(k1.alpha_gamma[1][1] == doctest::Approx(0.15).epsilon(1e-14));
  // the example's f_1 carries the factor 1/4 that sits in g_1 here
  CHECK(std::abs(k1.m / 4.0 - 0.72) <= 0.01);
  auto k2 = system_constants(sys, mg, 1, 1.0, 0.5);
  CHECK(std::abs(k2.m / 8.0 - 0.577) <= 0.01);
  CHECK(std::abs(k2.M / 8.0 - 1.376) <= 0.01);
}

TEST_CASE("elliptic diamond and index1 checks pass") {
  const auto& m = elliptic();
  const auto& sys = *m.system;
  auto d = system_index0_check(sys, 1.0 / 12, 1.0 / 12, m.checks.at(0).grid,
                               Index0Variant::Diamond, 1);
  CHECK(d.passed());
  auto r = system_index1_check(sys, 1.0, 0.5, m.checks.at(1).grid);
  CHECK(r.passed());
  const auto* e1 = r.clause("equation_1");
  REQUIRE(e1 != nullptr);
  CHECK(e1->at("envelope_f") / 4.0 == doctest::Approx(0.53125));
  const auto* e2 = r.clause("equation_2");
  REQUIRE(e2 != nullptr);
  CHECK(e2->at("envelope_f") / 8.0 == doctest::Approx(0.28125));
}

TEST_CASE("zero system: index1 passes, index0 fails") {
  const auto s = zero_system();
  for (double r : {0.1, 1.0, 10.0}) {
    CHECK(system_index1_check(s, r, 2 * r, {}).passed());
    CHECK_FALSE(system_index0_check(s, r, 2 * r, {}, Index0Variant::Full).passed());
  }
}

TEST_CASE("system_multiplicity planner") {
  const auto& sys = *elliptic().system;
  auto s3 = system_multiplicity(sys, {{{1.0 / 12, 1.0 / 12}, IndexKind::I0Diamond, {}},
                                      {{1.0, 0.5}, IndexKind::I1, {}},
                                      {{5.0, 11.0}, IndexKind::I0, {}}});
  CHECK(s3.solutions == 2);
  CHECK(s3.pattern == "S3");
  auto s2 = system_multiplicity(sys, {{{1.0, 0.5}, IndexKind::I1, {}},
                                      {{5.0, 11.0}, IndexKind::I0, {}}});
  CHECK(s2.solutions == 1);
  CHECK(s2.pattern == "S2");
  CHECK(system_multiplicity(sys, {{{1.0, 0.5}, IndexKind::I1, {}}}).solutions == 0);
}

TEST_CASE("system_check_growth") {
  auto f = Nonlinearity::coupled([](double, double u, double v) { return 3 * u + v * v; });
  CHECK(system_check_growth(f, 0, 2.0, Growth::Above, {0, 1}, {1e-3, 5}, {-1, 1}).passed());
  CHECK_FALSE(system_check_growth(f, 0, 4.0, Growth::Above, {0, 1}, {1e-3, 5}, {-1, 1}).passed());
}

TEST_SUITE("published examples") {
  TEST_CASE("elliptic M_1 = 2.16") {
    const auto& m = elliptic();
    auto k1 = system_constants(*m.system, m.checks.at(1).grid, 0, 1.0, 0.5);
    CHECK(std::abs(k1.M / 4.0 - 2.16) <= 0.01);
  }

  TEST_CASE("elliptic index1 bound 0.579 for the first equation") {
    const auto& m = elliptic();
    auto r = system_index1_check(*m.system, 1.0, 0.5, m.checks.at(1).grid);
    CHECK(std::abs(r.clause("equation_1")->at("f_bound") / 4.0 - 0.579) <= 0.01);
    CHECK(std::abs(r.clause("equation_2")->at("f_bound") / 8.0 - 0.2885) <= 0.01);
  }

  TEST_CASE("elliptic index0 at (5, 11) passes") {
    const auto& m = elliptic();
    auto r = system_index0_check(*m.system, 5.0, 11.0, m.checks.at(2).grid,
                                 Index0Variant::Full);
    const auto* e1 = r.clause("equation_1");
    CHECK(std::abs(e1->at("envelope_f") / 4.0 - 31.5) <= 0.01);
    CHECK(std::abs(e1->at("f_bound") / 4.0 - 2.08) <= 0.01);
    const auto* e2 = r.clause("equation_2");
    CHECK(std::abs(e2->at("envelope_f") / 8.0 - 15.25) <= 0.01);
    CHECK(std::abs(e2->at("f_bound") / 8.0 - 15.136) <= 0.01);
    CHECK(r.passed());
  }

  TEST_CASE("elliptic planner finds two solutions") {
    const auto& m = elliptic();
    const auto& sys = *m.system;
    std::vector<SystemVerdict> v;
    for (const auto& c : m.checks) {
      ConditionReport rep =
          c.kind == IndexKind::I1
              ? system_index1_check(sys, c.rho[0], c.rho[1], c.grid)
              : system_index0_check(sys, c.rho[0], c.rho[1], c.grid,
                                    c.kind == IndexKind::I0Diamond ? Index0Variant::Diamond
                                                                   : Index0Variant::Full,
                                    c.certify);
      v.push_back({c.rho, c.kind, rep});
    }
    auto s = system_multiplicity(sys, v);
    CHECK(s.solutions >= 2);
    CHECK(s.pattern == "S3");
  }
}
