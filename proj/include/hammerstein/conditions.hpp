#ifndef HAMMERSTEIN_CONDITIONS_HPP_
#define HAMMERSTEIN_CONDITIONS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hammerstein/envelopes.hpp"
#include "hammerstein/kernels.hpp"
#include "hammerstein/measures.hpp"
#include "hammerstein/report.hpp"

namespace hammer {

// u = gamma H[u] + int k(t,s) g(s) f(s,u(s)) ds.
struct Problem {
  std::string name;
  KernelSpec kernel;
  GammaSpec gamma;
  RealFn g;
  std::vector<double> g_breaks;
  Functional H;
  Nonlinearity f;
  double c = 1.0;  // min(c1, c2)
  std::optional<double> c_override;

  double cone() const { return c_override ? *c_override : c; }
  void validate(const Settings& s = {}) const;
};

Problem make_problem(const KernelBundle& bundle, RealFn g, Functional H,
                     Nonlinearity f, std::string name = "");

// Breakpoints for s -> k(t,s) g(s).
std::vector<double> integrand_breaks(const KernelSpec& k,
                                     const std::vector<double>& g_breaks,
                                     double t);

// int_lo^hi k(t,s) g(s) ds, or with |k| when `absolute`.
double kernel_weight_integral(const KernelSpec& k, const RealFn& g,
                              const std::vector<double>& g_breaks, double t,
                              double lo, double hi, bool absolute,
                              const QuadratureRule& rule);

// int_lo^hi K(s) g(s) ds for the transformed kernel of `alpha`.
double transformed_integral(const KernelSpec& k, const StieltjesMeasure& alpha,
                            const RealFn& g, const std::vector<double>& g_breaks,
                            double lo, double hi, const QuadratureRule& rule);

ConditionReport index1_check(const Problem& p, double rho,
                             const StieltjesMeasure& alpha,
                             const Settings& s = {});
ConditionReport index0_check(const Problem& p, double rho,
                             const StieltjesMeasure& alpha,
                             const Settings& s = {});

// Same checks routed through an explicit class path. A path that assumes
// more than the kernel's class guarantees is rejected.
ConditionReport index1_check_as(SignClass path, const Problem& p, double rho,
                                const StieltjesMeasure& alpha,
                                const Settings& s = {});
ConditionReport index0_check_as(SignClass path, const Problem& p, double rho,
                                const StieltjesMeasure& alpha,
                                const Settings& s = {});

struct NonexistenceThresholds {
  double m_alpha = 0.0;
  double M_alpha = 0.0;
  double m_location = 0.0;
  double M_location = 0.0;
  ConditionReport report;
};

NonexistenceThresholds nonexistence_thresholds(const Problem& p,
                                               const StieltjesMeasure& alpha,
                                               const Settings& s = {});

enum class Growth { Below, Above };

// f(t,u) < slope |u| (Below) or f(t,u) > slope u (Above) on the box,
// u = 0 excluded.
ConditionReport check_growth(const Nonlinearity& f, double slope,
                             Growth direction, Interval t_range,
                             Interval u_range, int grid_n = 2048);

enum class IndexKind { I1, I0, I0Diamond };

const char* to_string(IndexKind k);

struct IndexVerdict {
  double rho;
  IndexKind kind;
  ConditionReport report;
};

// Bounds on a solution: lower <= u(t) <= upper for t in t_range.
struct LocalizationWindow {
  Interval t_range;
  double lower;
  double upper;
  int component = 0;
  std::string label;
};

struct Localization {
  std::string set;  // e.g. "K_2.12 \ closure(V_0.071)"
  std::vector<LocalizationWindow> windows;
};

struct ExistenceSummary {
  int solutions = 0;
  std::string pattern;
  std::vector<Localization> localizations;
  std::vector<std::string> notes;

  std::string to_text(const std::string& prefix = "existence.") const;
};

ExistenceSummary single_multiplicity(const Problem& p,
                                     std::vector<IndexVerdict> verdicts);

// Windows implied by a solution in K_outer \ closure(V_inner) or
// V_outer \ closure(K_inner) for a single equation.
Localization single_localization(const Problem& p, IndexKind inner_kind,
                                 double inner, double outer);

}  // namespace hammer

#endif  // HAMMERSTEIN_CONDITIONS_HPP_
