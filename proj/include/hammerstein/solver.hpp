#ifndef HAMMERSTEIN_SOLVER_HPP_
#define HAMMERSTEIN_SOLVER_HPP_

#include <cmath>
#include <span>
#include <vector>

#include "hammerstein/conditions.hpp"
#include "hammerstein/systems.hpp"

namespace hammer {

struct SolutionProfile {
  std::vector<double> grid;
  std::vector<double> u;
  std::vector<double> v;  // empty for single equations
  double residual = INFINITY;
  int iterations = 0;
  bool converged = false;
  double damping = 1.0;  // damping in use when the iteration stopped
  std::vector<bool> window_flags;

  bool is_system() const { return !v.empty(); }
  // piecewise-linear interpolant of component 0 (u) or 1 (v)
  double at(double t, int component = 0) const;
  RealFn interpolant(int component = 0) const;

  static SolutionProfile constant(int nodes, double u0, bool system = false,
                                  double v0 = 0.0);
};

struct SolverSettings {
  int nodes = 257;
  double damping = 0.5;
  double tol = 1e-10;
  int max_iter = 10000;
  // halve the damping when the step norm grows for several iterations
  bool adaptive = true;
  int nodes_per_panel = 4;
};

// Nystrom discretization of T on a uniform grid. Quadrature cells are the
// grid cells further split at kernel breakpoints; u is interpolated
// linearly between nodes.
class NystromOperator {
 public:
  NystromOperator(const Problem& p, int nodes, int nodes_per_panel = 4);
  NystromOperator(const SystemSpec& s, int nodes, int nodes_per_panel = 4);

  SolutionProfile apply(const SolutionProfile& x) const;
  int nodes() const { return static_cast<int>(grid_.size()); }
  const std::vector<double>& grid() const { return grid_; }
  bool is_system() const { return system_; }

 private:
  struct Equation {
    std::vector<double> sq;    // quadrature nodes in s
    std::vector<int> cell;     // grid cell holding s_q
    std::vector<double> frac;  // position of s_q inside its cell
    // weights[node * Q + q] = k(t_node, s_q) g(s_q) w_q
    std::vector<double> weights;
    std::vector<std::vector<double>> gamma_at;  // per gamma term, per node
    std::vector<Functional> H;
    Nonlinearity f;
  };

  void build(Equation& e, const KernelSpec& k, const RealFn& g,
             const std::vector<double>& g_breaks,
             const std::vector<const GammaSpec*>& gammas, int nodes_per_panel);
  void apply_equation(const Equation& e, const SolutionProfile& x,
                      std::vector<double>& out) const;

  std::vector<double> grid_;
  bool system_ = false;
  std::vector<Equation> eqs_;
};

SolutionProfile apply_T(const Problem& p, const SolutionProfile& x,
                        int nodes_per_panel = 4);
SolutionProfile apply_T(const SystemSpec& s, const SolutionProfile& x,
                        int nodes_per_panel = 4);

SolutionProfile solve(const Problem& p, const SolutionProfile& u0,
                      const SolverSettings& settings = {});
SolutionProfile solve(const SystemSpec& s, const SolutionProfile& x0,
                      const SolverSettings& settings = {});
SolutionProfile solve(const NystromOperator& op, const SolutionProfile& x0,
                      const SolverSettings& settings = {});

std::vector<bool> localization_check(const SolutionProfile& sol,
                                     std::span<const LocalizationWindow> windows,
                                     double tol = 1e-12);

}  // namespace hammer

#endif  // HAMMERSTEIN_SOLVER_HPP_
