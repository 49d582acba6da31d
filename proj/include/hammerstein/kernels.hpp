#ifndef HAMMERSTEIN_KERNELS_HPP_
#define HAMMERSTEIN_KERNELS_HPP_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hammerstein/core.hpp"
#include "hammerstein/measures.hpp"
#include "hammerstein/report.hpp"

namespace hammer {

enum class SignClass { StronglyPositive, NonNegative, SignChanging };

const char* to_string(SignClass c);
SignClass parse_sign_class(std::string_view name);

using BreakpointFn = std::function<std::vector<double>(double)>;

struct KernelSpec {
  std::string name;
  KernelFn k;
  RealFn phi;
  Interval ab{0.0, 1.0};
  double c1 = 1.0;
  SignClass sign_class = SignClass::StronglyPositive;
  // s-values where s -> k(t,s) (or |k(t,s)|) is not smooth, for fixed t
  BreakpointFn s_breaks;
  // t-values where t -> k(t,s) is not smooth, for fixed s
  BreakpointFn t_breaks;

  double operator()(double t, double s) const { return k(t, s); }
  std::vector<double> s_breakpoints(double t) const;
  std::vector<double> t_breakpoints(double s) const;
  void validate() const;
};

struct GammaSpec {
  RealFn gamma;
  double c2 = 1.0;
  Interval ab{0.0, 1.0};
  std::optional<double> analytic_norm;
  std::vector<double> breakpoints;

  double operator()(double t) const { return gamma(t); }
  // sup |gamma| on [0,1]; the analytic value when one is stored
  double norm(int grid_n = 512) const;
  double sampled_norm(int grid_n = 512) const;
};

using ParamMap = std::map<std::string, double, std::less<>>;

// A kernel with the gamma terms and cone constant that come with it.
struct KernelBundle {
  KernelSpec kernel;
  std::vector<GammaSpec> gammas;
  double c = 1.0;  // min of c1 and every gamma's c2
};

KernelBundle builtin(std::string_view name, const ParamMap& params);
std::vector<std::string> builtin_names();

// Samples the defining inequalities of the sign class on a grid.
ConditionReport verify_bounds(const KernelSpec& kernel, int grid_n = 256,
                              double tol = 1e-10);

// Checks gamma >= c2 ||gamma|| on [a,b] and the stored norm.
ConditionReport verify_gamma(const GammaSpec& gamma, int grid_n = 512,
                             double tol = 1e-10);

struct KernelSection {
  RealFn fn;
  std::vector<double> breakpoints;
  double operator()(double s) const { return fn(s); }
};

// s -> int k(t,s) dA(t).
KernelSection transformed_kernel(const KernelSpec& kernel,
                                 const StieltjesMeasure& measure,
                                 const QuadratureRule& rule = {});

}  // namespace hammer

#endif  // HAMMERSTEIN_KERNELS_HPP_
