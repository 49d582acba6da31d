#ifndef HAMMERSTEIN_ELLIPTIC_HPP_
#define HAMMERSTEIN_ELLIPTIC_HPP_

#include <array>
#include <optional>
#include <vector>

#include "hammerstein/systems.hpp"

namespace hammer {

// Derived coefficients leave the positivity regime beta1 < 0,
// 0 < beta2 < 1 - xi.
class OutOfRegime : public Error {
 public:
  using Error::Error;
};

// Change of variables r(t) taking [0,1] onto [R1,R0] with r(0) = R0.
struct RadialMap {
  int n = 2;
  double R1 = 1.0, R0 = 2.0;

  RadialMap() = default;
  RadialMap(int n, double R1, double R0);

  double r(double t) const;
  double dr(double t) const;  // r'(t), negative
  double phi(double t) const;
  double t_of(double radius) const;
};

// Radial annulus system. Evaluation points of the functionals and
// breakpoints of the weights are radii; nonlinearities take (r,u,v).
struct EllipticAnnulusProblem {
  int n = 2;
  double R1 = 1.0, R0 = 2.0;
  double Reta = 1.5, Rxi = 1.5;
  double beta1 = -1.0, beta2_tilde = -1.0;
  std::array<RealFn, 2> g_tilde;
  std::array<std::vector<double>, 2> g_breaks;
  std::array<Nonlinearity, 2> f;
  Functional H11, H12, H21, H22;  // H11, H21 are the radial-derivative data
  std::array<Interval, 2> ab{Interval{0.0, 0.0}, Interval{0.0, 0.0}};
  std::array<bool, 2> ab_set{false, false};  // default [0,eta] and [0,xi]
  std::array<std::optional<double>, 2> c_override;
  std::string name;

  void validate() const;
};

struct EllipticTransform {
  SystemSpec system;
  RadialMap map;
  double eta = 0.0, xi = 0.0, beta2 = 0.0;
  double h11_scale = 1.0, h21_scale = 1.0;
  std::array<double, 2> c_computed{};
  ConditionReport report{"transform"};
};

RadialMap radial_map(int n, double R1, double R0);
EllipticTransform transform(const EllipticAnnulusProblem& ep);

// A functional with radius evaluation points rewritten in t and scaled.
Functional to_unit_interval(const Functional& H, const RadialMap& map,
                            double scale);

}  // namespace hammer

#endif
