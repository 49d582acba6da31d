#ifndef HAMMERSTEIN_SYSTEMS_HPP_
#define HAMMERSTEIN_SYSTEMS_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hammerstein/conditions.hpp"

namespace hammer {

// w_i = gamma_i1 H_i1[u,v] + gamma_i2 H_i2[u,v]
//       + int k_i(t,s) g_i(s) f_i(s,u(s),v(s)) ds.
struct SystemEquation {
  KernelSpec kernel;
  std::array<GammaSpec, 2> gammas;
  RealFn g;
  std::vector<double> g_breaks;
  std::array<Functional, 2> H;
  Nonlinearity f;
};

struct SystemSpec {
  std::string name;
  std::array<SystemEquation, 2> eq;
  std::array<double, 2> c{1.0, 1.0};  // min(c~_i, c_i1, c_i2)
  std::array<std::optional<double>, 2> c_override;

  double cone(int i) const { return c_override[i] ? *c_override[i] : c[i]; }
  void validate(const Settings& s = {}) const;
};

SystemEquation make_equation(const KernelBundle& bundle, RealFn g,
                             Functional H1, Functional H2, Nonlinearity f);
SystemSpec make_system(SystemEquation eq1, SystemEquation eq2,
                       std::string name = "");

// alpha_ijl for i,j,l in {0,1}: equation i, functional H_ij, acting on
// component l.
struct MeasureGrid {
  std::array<StieltjesMeasure, 8> m;
  StieltjesMeasure& at(int i, int j, int l) { return m[4 * i + 2 * j + l]; }
  const StieltjesMeasure& at(int i, int j, int l) const {
    return m[4 * i + 2 * j + l];
  }
};

// alpha_ij acting on component i, for the non-existence theorems.
struct ReducedMeasures {
  std::array<StieltjesMeasure, 4> m;
  StieltjesMeasure& at(int i, int j) { return m[2 * i + j]; }
  const StieltjesMeasure& at(int i, int j) const { return m[2 * i + j]; }
};

// Inverse of [[a11,a12],[a21,a22]] applied to rhs. The matrix must have
// the order-preserving pattern: a11, a22 >= 0, a12, a21 <= 0, det > 0.
std::array<double, 2> matrix2_solve(double a11, double a12, double a21,
                                    double a22, std::array<double, 2> rhs);

struct SystemConstants {
  int i = 0;
  double D = 1.0;
  std::array<double, 4> theta{1.0, 0.0, 0.0, 1.0};
  double Q = 0.0, S = 0.0;
  double inv_m = 0.0, m = 0.0, inv_M = 0.0, M = 0.0;
  // alpha_{iji'}[gamma_{ij'}] pieces that enter D_i
  double A1 = 0.0, A2 = 0.0, A12 = 0.0, A21 = 0.0;
  std::array<std::array<double, 2>, 2> alpha_gamma{};  // [j][l] alpha_ijl[gamma_ij]
  std::array<std::array<double, 2>, 2> alpha_mass{};   // [j][l] alpha_ijl[1]
  std::array<double, 2> gamma_norm{};
  std::array<double, 2> J{};     // int_0^1 K_iji g_i
  std::array<double, 2> J_ab{};  // int_{a_i}^{b_i} K_iji g_i
  std::array<KernelSection, 2> K;
  ConditionReport report;
  bool hypotheses_ok() const { return report.passed(); }
};

SystemConstants system_constants(const SystemSpec& s, const MeasureGrid& mg,
                                 int i, double rho1, double rho2,
                                 const Settings& settings = {});

ConditionReport system_index1_check(const SystemSpec& s, double rho1,
                                    double rho2, const MeasureGrid& mg,
                                    const Settings& settings = {});

enum class Index0Variant { Full, Diamond };

// `certify` names the equation (0 or 1) of the diamond variant.
ConditionReport system_index0_check(const SystemSpec& s, double rho1,
                                    double rho2, const MeasureGrid& mg,
                                    Index0Variant variant, int certify = 0,
                                    const Settings& settings = {});

struct SystemVerdict {
  std::array<double, 2> rho;
  IndexKind kind;
  ConditionReport report;
};

ExistenceSummary system_multiplicity(const SystemSpec& s,
                                     std::vector<SystemVerdict> verdicts);

enum class NonexistenceMode { Sub, Super, Mixed };

struct SystemNonexistence {
  std::array<double, 2> threshold{};  // N_i or P_i per equation
  std::array<bool, 2> sublinear{};
  ConditionReport report;
};

// `sub_index` picks the equation with the sublinear role in mixed mode.
SystemNonexistence system_nonexistence(const SystemSpec& s,
                                       const ReducedMeasures& measures,
                                       NonexistenceMode mode, int sub_index = 0,
                                       const Settings& settings = {});

// f_i(t,u1,u2) < slope |u_i| (Below) or > slope u_i (Above) with u_i in
// `own` (0 excluded) and the other component in `other`.
ConditionReport system_check_growth(const Nonlinearity& f, int i, double slope,
                                    Growth direction, Interval t_range,
                                    Interval own, Interval other,
                                    int grid_n = 512);

}  // namespace hammer

#endif  // HAMMERSTEIN_SYSTEMS_HPP_
