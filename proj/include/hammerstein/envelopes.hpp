#ifndef HAMMERSTEIN_ENVELOPES_HPP_
#define HAMMERSTEIN_ENVELOPES_HPP_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hammerstein/core.hpp"
#include "hammerstein/measures.hpp"
#include "hammerstein/report.hpp"

namespace hammer {

// f(t,u) or f(t,u,v); single-equation nonlinearities ignore v.
struct Nonlinearity {
  std::function<double(double, double, double)> fn;
  int arity = 1;
  std::string text;

  static Nonlinearity scalar(std::function<double(double, double)> f,
                             std::string text = "");
  static Nonlinearity coupled(std::function<double(double, double, double)> f,
                              std::string text = "");
  static Nonlinearity zero(int arity = 1);

  double operator()(double t, double u, double v = 0.0) const {
    return fn(t, u, v);
  }
};

struct EvalPoint {
  double t;
  int component = 0;  // 0 for u, 1 for v
};

// H[u] = h(u(t_1), ..., u(t_m)). A general functional without point
// structure can be stored for the solver via `general`, which takes the
// two components as callables; domination checks reject it.
struct Functional {
  std::vector<EvalPoint> points;
  std::function<double(std::span<const double>)> h;
  std::function<double(const RealFn&, const RealFn&)> general;
  std::string text;

  static Functional zero();
  bool is_zero() const { return zero_flag; }
  bool point_evaluable() const { return !general; }

  double evaluate(const RealFn& u, const RealFn& v = nullptr) const;
  double at_values(std::span<const double> xs) const;

  bool zero_flag = false;
};

struct BoxExtremum {
  double value;  // extremum of f/rho
  double raw;    // extremum of f itself
  double t, u, v;
  double sampled_min;  // smallest sampled f, for the sign hypothesis
};

BoxExtremum box_extremum(const Nonlinearity& f, Interval t_range,
                         Interval u_range, std::optional<Interval> v_range,
                         double rho, Extremum mode, int points_per_axis = 128);

enum class Domination { AtMost, AtLeast };

// Checks h(x) <= (or >=) sum_l alpha_l[x] over the product of per-point
// value boxes. `measures[l]` acts on component l, `boxes[p]` is the range
// of the value at H.points[p].
ConditionReport domination_check(const Functional& H,
                                 std::span<const StieltjesMeasure> measures,
                                 std::span<const Interval> boxes,
                                 Domination direction, int points_per_axis = 128,
                                 double tol = 1e-9);

}  // namespace hammer

#endif  // HAMMERSTEIN_ENVELOPES_HPP_
