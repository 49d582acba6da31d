#ifndef HAMMERSTEIN_MEASURES_HPP_
#define HAMMERSTEIN_MEASURES_HPP_

#include <optional>
#include <vector>

#include "hammerstein/core.hpp"
#include "hammerstein/quadrature.hpp"

namespace hammer {

struct Atom {
  double t;
  double w;
};

struct Density {
  RealFn fn;
  std::vector<double> breakpoints;
};

// Positive measure dA on [0,1]: point masses plus an optional density.
// alpha[u] = sum w_i u(t_i) + int_0^1 u(t) density(t) dt.
class StieltjesMeasure {
 public:
  StieltjesMeasure() = default;
  explicit StieltjesMeasure(std::vector<Atom> atoms,
                            std::optional<Density> density = std::nullopt);

  static StieltjesMeasure point(double t, double w) {
    return StieltjesMeasure({{t, w}});
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<Density>& density() const { return density_; }
  bool atoms_only() const { return !density_.has_value(); }
  bool is_zero() const;

  double apply(const RealFn& u, const QuadratureRule& rule = {}) const;
  double mass(const QuadratureRule& rule = {}) const;

  StieltjesMeasure scaled(double factor) const;
  StieltjesMeasure plus(const StieltjesMeasure& other) const;

 private:
  std::vector<Atom> atoms_;
  std::optional<Density> density_;
};

}  // namespace hammer

#endif  // HAMMERSTEIN_MEASURES_HPP_
