#include "hammerstein/measures.hpp"

#include <cmath>
#include <string>

namespace hammer {

StieltjesMeasure::StieltjesMeasure(std::vector<Atom> atoms,
                                   std::optional<Density> density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
  for (const auto& a : atoms_) {
    if (!(a.t >= 0.0 && a.t <= 1.0))
      throw DomainError("measure atom at t=" + std::to_string(a.t) +
                        " lies outside [0,1]");
    if (!(a.w >= 0.0) || !std::isfinite(a.w))
      throw InvalidMeasure("measure atom at t=" + std::to_string(a.t) +
                           " has negative or non-finite weight " +
                           std::to_string(a.w));
  }
  if (density_) {
    if (!density_->fn) throw InvalidMeasure("measure density is empty");
    for (int i = 0; i <= 64; ++i) {
      const double t = i / 64.0;
      const double d = density_->fn(t);
      if (!(d >= 0.0) || !std::isfinite(d))
        throw InvalidMeasure("measure density is negative or non-finite at t=" +
                             std::to_string(t));
    }
  }
}

bool StieltjesMeasure::is_zero() const {
  if (density_) return false;
  for (const auto& a : atoms_)
    if (a.w != 0.0) return false;
  return true;
}

double StieltjesMeasure::apply(const RealFn& u,
                               const QuadratureRule& rule) const {
  double total = 0.0;
  for (const auto& a : atoms_)
    if (a.w != 0.0) total += a.w * u(a.t);
  if (density_) {
    const auto& d = *density_;
    total += integrate(
        rule, [&](double t) { return u(t) * d.fn(t); }, 0.0, 1.0,
        d.breakpoints);
  }
  return total;
}

double StieltjesMeasure::mass(const QuadratureRule& rule) const {
  return apply([](double) { return 1.0; }, rule);
}

StieltjesMeasure StieltjesMeasure::scaled(double factor) const {
  if (factor < 0.0) throw InvalidMeasure("negative scaling of a measure");
  std::vector<Atom> atoms = atoms_;
  for (auto& a : atoms) a.w *= factor;
  std::optional<Density> d;
  if (density_) {
    RealFn fn = [f = density_->fn, factor](double t) { return factor * f(t); };
    d = Density{fn, density_->breakpoints};
  }
  return StieltjesMeasure(std::move(atoms), std::move(d));
}

StieltjesMeasure StieltjesMeasure::plus(const StieltjesMeasure& other) const {
  std::vector<Atom> atoms = atoms_;
  atoms.insert(atoms.end(), other.atoms_.begin(), other.atoms_.end());
  std::optional<Density> d;
  if (density_ && other.density_) {
    RealFn fn = [f = density_->fn, g = other.density_->fn](double t) {
      return f(t) + g(t);
    };
    auto br = density_->breakpoints;
    br.insert(br.end(), other.density_->breakpoints.begin(),
              other.density_->breakpoints.end());
    d = Density{fn, br};
  } else if (density_) {
    d = density_;
  } else if (other.density_) {
    d = other.density_;
  }
  return StieltjesMeasure(std::move(atoms), std::move(d));
}

}  // namespace hammer
