#include "hammerstein/elliptic.hpp"

#include <cmath>
#include <cstdio>

namespace hammer {

RadialMap::RadialMap(int n_, double R1_, double R0_) : n(n_), R1(R1_), R0(R0_) {
  if (n < 2) throw DomainError("dimension must be at least 2");
  if (!(R1 > 0.0 && R1 < R0 && std::isfinite(R0)))
    throw DomainError("radii must satisfy 0 < R1 < R0 < inf");
}

double RadialMap::r(double t) const {
  if (n == 2) return std::pow(R0, 1.0 - t) * std::pow(R1, t);
  const double p = n - 2;
  const double A = std::pow(R0, -p), B = std::pow(R1, -p);
  return std::pow(A + (B - A) * t, -1.0 / p);
}

double RadialMap::dr(double t) const {
  if (n == 2) return r(t) * std::log(R1 / R0);
  const double p = n - 2;
  const double A = std::pow(R0, -p), B = std::pow(R1, -p);
  return -(B - A) / p * std::pow(A + (B - A) * t, -1.0 / p - 1.0);
}

double RadialMap::phi(double t) const {
  if (n == 2) {
    const double l = std::log(R0 / R1);
    const double rt = r(t);
    return rt * rt * l * l;
  }
  const double p = n - 2;
  const double A = std::pow(R0, -p), B = std::pow(R1, -p);
  const double q = (B - A) / p;
  return q * q * std::pow(A + (B - A) * t, -2.0 * (n - 1) / p);
}

double RadialMap::t_of(double radius) const {
  if (!(radius >= R1 * (1.0 - 1e-14) && radius <= R0 * (1.0 + 1e-14)))
    throw DomainError("radius " + format_number(radius) +
                      " lies outside [R1,R0]");
  if (n == 2) return std::log(R0 / radius) / std::log(R0 / R1);
  const double p = n - 2;
  const double A = std::pow(R0, -p), B = std::pow(R1, -p);
  return (std::pow(radius, -p) - A) / (B - A);
}

RadialMap radial_map(int n, double R1, double R0) { return {n, R1, R0}; }

void EllipticAnnulusProblem::validate() const {
  RadialMap m(n, R1, R0);
  if (!(Reta > R1 && Reta < R0))
    throw DomainError("R_eta must lie strictly inside (R1,R0)");
  if (!(Rxi > R1 && Rxi < R0))
    throw DomainError("R_xi must lie strictly inside (R1,R0)");
  if (!(beta1 < 0.0)) throw OutOfRegime("beta1 must be negative");
  if (!(beta2_tilde < 0.0)) throw OutOfRegime("beta2~ must be negative");
  for (int i = 0; i < 2; ++i) {
    if (!g_tilde[i])
      throw SpecificationError("radial weight g" + std::to_string(i + 1) +
                               " is missing");
    if (!f[i].fn)
      throw SpecificationError("nonlinearity f" + std::to_string(i + 1) +
                               " is missing");
  }
}

Functional to_unit_interval(const Functional& H, const RadialMap& map,
                            double scale) {
  if (!H.point_evaluable())
    throw SpecificationError("annulus functionals must be point evaluations");
  if (H.is_zero()) return Functional::zero();
  Functional out;
  out.points = H.points;
  for (auto& p : out.points) p.t = map.t_of(p.t);
  auto h = H.h;
  out.h = [h, scale](std::span<const double> x) { return scale * h(x); };
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", scale);
  out.text = scale == 1.0 ? H.text : std::string(buf) + "*(" + H.text + ")";
  return out;
}

EllipticTransform transform(const EllipticAnnulusProblem& ep) {
  ep.validate();
  EllipticTransform tr;
  tr.map = RadialMap(ep.n, ep.R1, ep.R0);
  const RadialMap& m = tr.map;
  tr.eta = m.t_of(ep.Reta);
  tr.xi = m.t_of(ep.Rxi);
  tr.beta2 = ep.beta2_tilde / m.dr(tr.xi);
  if (!(tr.beta2 > 0.0 && tr.beta2 < 1.0 - tr.xi))
    throw OutOfRegime("derived beta2 = " + format_number(tr.beta2) +
                      " lies outside (0, 1 - xi) with xi = " +
                      format_number(tr.xi));
  tr.h11_scale = -m.dr(0.0);
  tr.h21_scale = -m.dr(0.0);

  std::array<double, 2> b{tr.eta, tr.xi};
  std::array<Interval, 2> ab;
  for (int i = 0; i < 2; ++i) {
    ab[i] = ep.ab_set[i] ? ep.ab[i] : Interval{0.0, b[i]};
    if (!(ab[i].lo >= 0.0 && ab[i].lo < ab[i].hi && ab[i].hi <= b[i] + 1e-14))
      throw DomainError("[a" + std::to_string(i + 1) + ",b" +
                        std::to_string(i + 1) + "] must lie inside [0," +
                        format_number(b[i]) + "]");
  }
  auto k1 = builtin("multipoint_k1", {{"beta1", ep.beta1},
                                      {"eta", tr.eta},
                                      {"a", ab[0].lo},
                                      {"b", ab[0].hi}});
  auto k2 = builtin("derivative_k2", {{"beta2", tr.beta2},
                                      {"xi", tr.xi},
                                      {"a", ab[1].lo},
                                      {"b", ab[1].hi}});

  std::array<SystemEquation, 2> eqs;
  std::array<const KernelBundle*, 2> bundles{&k1, &k2};
  std::array<const Functional*, 2> first{&ep.H11, &ep.H21};
  std::array<const Functional*, 2> second{&ep.H12, &ep.H22};
  std::array<double, 2> scale{tr.h11_scale, tr.h21_scale};
  for (int i = 0; i < 2; ++i) {
    auto gt = ep.g_tilde[i];
    RealFn g = [gt, m](double t) { return m.phi(t) * gt(m.r(t)); };
    auto fr = ep.f[i];
    auto f = Nonlinearity::coupled(
        [fr, m](double t, double u, double v) { return fr(m.r(t), u, v); },
        fr.text);
    eqs[i] = make_equation(*bundles[i], g,
                           to_unit_interval(*first[i], m, scale[i]),
                           to_unit_interval(*second[i], m, 1.0), f);
    for (double rb : ep.g_breaks[i]) eqs[i].g_breaks.push_back(m.t_of(rb));
  }
  tr.system = make_system(eqs[0], eqs[1], ep.name);
  tr.system.c_override = ep.c_override;
  tr.c_computed = tr.system.c;

  auto& rep = tr.report;
  rep.set("n", ep.n);
  rep.set("R1", ep.R1);
  rep.set("R0", ep.R0);
  rep.set("eta", tr.eta);
  rep.set("xi", tr.xi);
  rep.set("r_eta", m.r(tr.eta));
  rep.set("r_xi", m.r(tr.xi));
  rep.set("beta1", ep.beta1);
  rep.set("beta2", tr.beta2);
  rep.set("H11_scale", tr.h11_scale);
  rep.set("H21_scale", tr.h21_scale);
  for (int i = 0; i < 2; ++i) {
    const std::string p = "eq" + std::to_string(i + 1) + ".";
    rep.set(p + "a", ab[i].lo);
    rep.set(p + "b", ab[i].hi);
    rep.set(p + "c_computed", tr.c_computed[i]);
    if (ep.c_override[i]) rep.set(p + "c", *ep.c_override[i]);
    else rep.set(p + "c", tr.c_computed[i]);
    rep.set(p + "gamma1_norm", eqs[i].gammas[0].norm());
    rep.set(p + "gamma2_norm", eqs[i].gammas[1].norm());
  }
  rep.set_verdict(Verdict::Pass);
  return tr;
}

}  // namespace hammer
