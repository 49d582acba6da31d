#ifndef HAMMERSTEIN_QUADRATURE_HPP_
#define HAMMERSTEIN_QUADRATURE_HPP_

#include <span>
#include <vector>

#include "hammerstein/core.hpp"

namespace hammer {

struct QuadratureNode {
  double x;
  double w;
};

// Gauss-Legendre nodes and weights on [-1, 1], ascending in x.
const std::vector<QuadratureNode>& gauss_legendre(int n);

// Composite rule: `panels` equal cells on [0,1], each further split at the
// rule's breakpoints and at any extra points passed to a call, with a
// `nodes_per_panel`-point Gauss rule on every sub-cell.
struct QuadratureRule {
  int panels = 64;
  int nodes_per_panel = 4;
  std::vector<double> breakpoints;

  QuadratureRule() = default;
  QuadratureRule(int p, int n, std::vector<double> b = {})
      : panels(p), nodes_per_panel(n), breakpoints(std::move(b)) {}
  static QuadratureRule from(const Settings& s) {
    return QuadratureRule(s.panels, s.nodes_per_panel);
  }

  void validate() const;
};

// Sorted cell edges covering [lo,hi].
std::vector<double> cell_edges(const QuadratureRule& rule, double lo, double hi,
                               std::span<const double> extra = {});

std::vector<QuadratureNode> quadrature_nodes(const QuadratureRule& rule,
                                             double lo, double hi,
                                             std::span<const double> extra = {});

double integrate(const QuadratureRule& rule, const RealFn& h, double lo,
                 double hi, std::span<const double> extra = {});

struct ExtremumResult {
  double value;
  double location;
};

// Grid search over [lo,hi] (uniform grid plus `extra` points) followed by
// golden-section refinement around the best grid point.
ExtremumResult sup_inf_over_t(const RealFn& F, double lo, double hi,
                              Extremum mode, int grid_n = 512,
                              std::span<const double> extra = {});

}  // namespace hammer

#endif  // HAMMERSTEIN_QUADRATURE_HPP_
