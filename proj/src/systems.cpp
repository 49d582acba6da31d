#include "hammerstein/systems.hpp"

#include <algorithm>
#include <cmath>

namespace hammer {

namespace {

std::string idx(int i) { return std::to_string(i + 1); }

std::string radii_text(double r1, double r2) {
  return "(" + format_number(r1) + ", " + format_number(r2) + ")";
}

void check_radii(double rho1, double rho2) {
  if (!(rho1 > 0.0) || !(rho2 > 0.0) || !std::isfinite(rho1) ||
      !std::isfinite(rho2))
    throw DomainError("radii must be positive, got " + radii_text(rho1, rho2));
}

// Value range of component `comp` at time t for (u,v) on the boundary of
// K (v_boundary = false) or V, in the case where component `active` is
// the one that attains the boundary.
Interval system_range(const SystemSpec& s, int comp, int active, double t,
                      std::array<double, 2> rho, bool v_boundary) {
  const auto& k = s.eq[comp].kernel;
  const double c = s.cone(comp);
  const bool in_ab = k.ab.contains(t, 1e-14);
  const bool nonneg = k.sign_class != SignClass::SignChanging;
  const double top = v_boundary ? rho[comp] / c : rho[comp];
  if (comp == active) {
    const double bottom = v_boundary ? rho[comp] : c * rho[comp];
    if (in_ab || k.sign_class == SignClass::StronglyPositive)
      return {bottom, top};
    return {nonneg ? 0.0 : -top, top};
  }
  if (in_ab || nonneg) return {0.0, top};
  return {-top, top};
}

// Domination of H_ij over both boundary cases, merged into one clause.
ConditionReport system_domination(const SystemSpec& s, const MeasureGrid& mg,
                                  int i, int j, std::array<double, 2> rho,
                                  bool v_boundary, const Settings& settings) {
  const auto& H = s.eq[i].H[j];
  const std::array<StieltjesMeasure, 2> ms{mg.at(i, j, 0), mg.at(i, j, 1)};
  const auto dir = v_boundary ? Domination::AtLeast : Domination::AtMost;
  ConditionReport out("domination_H" + idx(i) + idx(j));
  double worst = INFINITY;
  for (int active = 0; active < 2; ++active) {
    std::vector<Interval> boxes;
    for (const auto& p : H.points)
      boxes.push_back(system_range(s, p.component, active, p.t, rho, v_boundary));
    auto rep = domination_check(H, ms, boxes, dir, settings.box_grid);
    ConditionReport named("case_" + std::string(active == 0 ? "u" : "v") +
                          "_on_boundary");
    for (const auto& [k, v] : rep.constants()) named.set(k, v);
    for (const auto& [k, v] : rep.notes()) named.note(k, v);
    named.set_verdict(rep.verdict());
    if (rep.has("margin")) worst = std::min(worst, rep.at("margin"));
    out.add_clause(named);
  }
  if (std::isfinite(worst)) out.set("margin", worst);
  return out;
}

Interval unit() { return {0.0, 1.0}; }

}  // namespace

void SystemSpec::validate(const Settings& s) const {
  const auto rule = QuadratureRule::from(s);
  for (int i = 0; i < 2; ++i) {
    const auto& e = eq[i];
    e.kernel.validate();
    for (const auto& gm : e.gammas)
      if (!gm.gamma)
        throw SpecificationError("equation " + idx(i) + " misses a gamma term");
    if (!e.g) throw SpecificationError("equation " + idx(i) + " has no weight");
    if (!e.f.fn)
      throw SpecificationError("equation " + idx(i) + " has no nonlinearity");
    const double c = cone(i);
    if (!(c > 0.0 && c <= 1.0))
      throw DomainError("cone constant of equation " + idx(i) +
                        " must lie in (0,1]");
    const double mass = integrate(
        rule, [&](double x) { return e.kernel.phi(x) * e.g(x); },
        e.kernel.ab.lo, e.kernel.ab.hi, e.g_breaks);
    if (!(mass > 0.0))
      throw SpecificationError("equation " + idx(i) +
                               ": the integral of phi * g over [a,b] must be "
                               "positive");
  }
}

SystemEquation make_equation(const KernelBundle& bundle, RealFn g,
                             Functional H1, Functional H2, Nonlinearity f) {
  if (bundle.gammas.size() != 2)
    throw SpecificationError("kernel '" + bundle.kernel.name +
                             "' does not carry two gamma terms");
  SystemEquation e;
  e.kernel = bundle.kernel;
  e.gammas = {bundle.gammas[0], bundle.gammas[1]};
  e.g = std::move(g);
  e.H = {std::move(H1), std::move(H2)};
  e.f = std::move(f);
  return e;
}

SystemSpec make_system(SystemEquation eq1, SystemEquation eq2,
                       std::string name) {
  SystemSpec s;
  s.name = std::move(name);
  s.eq = {std::move(eq1), std::move(eq2)};
  for (int i = 0; i < 2; ++i)
    s.c[i] = std::min({s.eq[i].kernel.c1, s.eq[i].gammas[0].c2,
                       s.eq[i].gammas[1].c2});
  return s;
}

std::array<double, 2> matrix2_solve(double a11, double a12, double a21,
                                    double a22, std::array<double, 2> rhs) {
  if (a11 < 0.0 || a22 < 0.0 || a12 > 0.0 || a21 > 0.0)
    throw DomainError("matrix does not have the order-preserving pattern "
                      "[[a, -b], [-c, d]] with a, b, c, d >= 0");
  const double det = a11 * a22 - a12 * a21;
  if (!(det > 0.0))
    throw DomainError("matrix is singular or not order preserving (det = " +
                      format_number(det) + ")");
  return {(a22 * rhs[0] - a12 * rhs[1]) / det,
          (-a21 * rhs[0] + a11 * rhs[1]) / det};
}

SystemConstants system_constants(const SystemSpec& s, const MeasureGrid& mg,
                                 int i, double rho1, double rho2,
                                 const Settings& settings) {
  if (i != 0 && i != 1) throw DomainError("equation index must be 1 or 2");
  check_radii(rho1, rho2);
  const auto rule = QuadratureRule::from(settings);
  const auto& e = s.eq[i];
  const int l = 1 - i;
  const std::array<double, 2> rho{rho1, rho2};
  SystemConstants out;
  out.i = i;
  auto& rep = out.report;
  rep = ConditionReport("constants_" + idx(i));

  for (int j = 0; j < 2; ++j) {
    out.gamma_norm[j] = e.gammas[j].norm(settings.grid_n);
    rep.set("gamma_norm_" + idx(i) + idx(j), out.gamma_norm[j]);
    for (int ll = 0; ll < 2; ++ll) {
      const auto& a = mg.at(i, j, ll);
      out.alpha_gamma[j][ll] = a.apply(e.gammas[j].gamma, rule);
      out.alpha_mass[j][ll] = a.mass(rule);
      const std::string name = idx(i) + idx(j) + idx(ll);
      rep.set("alpha_" + name + "_gamma", out.alpha_gamma[j][ll]);
      rep.set("alpha_" + name + "_mass", out.alpha_mass[j][ll]);
      ConditionReport c("alpha_" + name + "_gamma_lt_1");
      c.set("value", out.alpha_gamma[j][ll]);
      c.set_verdict(out.alpha_gamma[j][ll] < 1.0 ? Verdict::Pass
                                                 : Verdict::Fail);
      rep.add_clause(c);
    }
  }
  const auto& ai0 = mg.at(i, 0, i);
  const auto& ai1 = mg.at(i, 1, i);
  out.A1 = ai0.apply(e.gammas[0].gamma, rule);
  out.A2 = ai1.apply(e.gammas[1].gamma, rule);
  out.A12 = ai0.apply(e.gammas[1].gamma, rule);
  out.A21 = ai1.apply(e.gammas[0].gamma, rule);
  out.D = (1.0 - out.A1) * (1.0 - out.A2) - out.A12 * out.A21;
  rep.set("D", out.D);
  ConditionReport dc("D_positive");
  dc.set("D", out.D);
  dc.set_verdict(out.D > 0.0 ? Verdict::Pass : Verdict::Fail);
  rep.add_clause(dc);
  if (out.D > 0.0) {
    out.theta = {(1.0 - out.A2) / out.D, out.A12 / out.D, out.A21 / out.D,
                 (1.0 - out.A1) / out.D};
  }
  for (int k = 0; k < 4; ++k)
    rep.set("theta_" + idx(i) + idx(k), out.theta[k]);

  const double ratio = rho[l] / rho[i];
  double q = 0.0, sv = 0.0;
  for (int j = 0; j < 2; ++j) {
    q += ai0.apply(e.gammas[j].gamma, rule) * out.alpha_mass[j][l];
    sv += ai1.apply(e.gammas[j].gamma, rule) * out.alpha_mass[j][l];
  }
  out.Q = ratio * q;
  out.S = ratio * sv;
  rep.set("Q", out.Q);
  rep.set("S", out.S);

  const auto& ab = e.kernel.ab;
  std::vector<double> extra{ab.lo, ab.hi};
  const auto sm = sup_inf_over_t(
      [&](double t) {
        return kernel_weight_integral(e.kernel, e.g, e.g_breaks, t, 0.0, 1.0,
                                      true, rule);
      },
      0.0, 1.0, Extremum::Sup, settings.grid_n, extra);
  const auto sM = sup_inf_over_t(
      [&](double t) {
        return kernel_weight_integral(e.kernel, e.g, e.g_breaks, t, ab.lo,
                                      ab.hi, false, rule);
      },
      ab.lo, ab.hi, Extremum::Inf, settings.grid_n, extra);
  out.inv_m = sm.value;
  out.m = 1.0 / sm.value;
  out.inv_M = sM.value;
  out.M = 1.0 / sM.value;
  rep.set("inv_m", out.inv_m);
  rep.set("m", out.m);
  rep.set("m_t", sm.location);
  rep.set("inv_M", out.inv_M);
  rep.set("M", out.M);
  rep.set("M_t", sM.location);

  for (int j = 0; j < 2; ++j) {
    const auto& a = mg.at(i, j, i);
    out.K[j] = transformed_kernel(e.kernel, a, rule);
    out.J[j] = transformed_integral(e.kernel, a, e.g, e.g_breaks, 0.0, 1.0, rule);
    out.J_ab[j] =
        transformed_integral(e.kernel, a, e.g, e.g_breaks, ab.lo, ab.hi, rule);
    const std::string name = idx(i) + idx(j) + idx(i);
    rep.set("K_" + name + "_integral", out.J[j]);
    rep.set("K_" + name + "_integral_ab", out.J_ab[j]);
  }
  return out;
}

ConditionReport system_index1_check(const SystemSpec& s, double rho1,
                                    double rho2, const MeasureGrid& mg,
                                    const Settings& settings) {
  check_radii(rho1, rho2);
  s.validate(settings);
  const std::array<double, 2> rho{rho1, rho2};
  ConditionReport rep("system_index1");
  rep.set("rho1", rho1);
  rep.set("rho2", rho2);
  for (int i = 0; i < 2; ++i) {
    rep.set("c" + idx(i), s.cone(i));
    if (s.c_override[i]) rep.set("c" + idx(i) + "_computed", s.c[i]);
  }
  rep.record_settings(settings);
  for (int i = 0; i < 2; ++i) {
    const int l = 1 - i;
    auto k = system_constants(s, mg, i, rho1, rho2, settings);
    ConditionReport eq("equation_" + idx(i));
    eq.add_clause(k.report);
    if (!k.hypotheses_ok()) {
      eq.note("stopped", "measure hypotheses fail");
      rep.add_clause(eq);
      continue;
    }
    for (int j = 0; j < 2; ++j)
      eq.add_clause(system_domination(s, mg, i, j, rho, false, settings));
    const auto env = box_extremum(s.eq[i].f, unit(), {-rho1, rho1},
                                  Interval{-rho2, rho2}, rho[i], Extremum::Sup,
                                  settings.box_grid);
    const auto& th = k.theta;
    const double n1 = k.gamma_norm[0], n2 = k.gamma_norm[1];
    const double A = (n1 * th[0] + n2 * th[2]) * k.J[0] +
                     (n1 * th[1] + n2 * th[3]) * k.J[1] + k.inv_m;
    const double B = n1 * (th[0] * k.Q + th[1] * k.S) +
                     n2 * (th[2] * k.Q + th[3] * k.S) +
                     rho[l] / rho[i] *
                         (n1 * k.alpha_mass[0][l] + n2 * k.alpha_mass[1][l]);
    const double lhs = env.value * A + B;
    eq.set("envelope_f", env.raw);
    eq.set("envelope", env.value);
    eq.set("envelope_at_t", env.t);
    eq.set("envelope_at_u", env.u);
    eq.set("envelope_at_v", env.v);
    eq.set("coefficient", A);
    eq.set("offset", B);
    eq.set("f_bound", rho[i] * (1.0 - B) / A);
    ConditionReport sc("nonlinearity_nonnegative");
    sc.set("sampled_min", env.sampled_min);
    sc.set_verdict(env.sampled_min >= 0.0 ? Verdict::Pass : Verdict::Fail);
    eq.add_clause(sc);
    ConditionReport ineq("envelope_lt_1");
    ineq.set("lhs", lhs);
    ineq.set("margin", 1.0 - lhs);
    ineq.set("tol", settings.tol);
    ineq.set_verdict(1.0 - lhs > settings.tol ? Verdict::Pass : Verdict::Fail);
    eq.add_clause(ineq);
    eq.set("lhs", lhs);
    eq.set("margin", 1.0 - lhs);
    rep.add_clause(eq);
  }
  return rep;
}

ConditionReport system_index0_check(const SystemSpec& s, double rho1,
                                    double rho2, const MeasureGrid& mg,
                                    Index0Variant variant, int certify,
                                    const Settings& settings) {
  check_radii(rho1, rho2);
  s.validate(settings);
  const bool diamond = variant == Index0Variant::Diamond;
  if (diamond && certify != 0 && certify != 1)
    throw DomainError("the diamond variant certifies equation 1 or 2");
  const std::array<double, 2> rho{rho1, rho2};
  ConditionReport rep(diamond ? "system_index0_diamond" : "system_index0");
  rep.set("rho1", rho1);
  rep.set("rho2", rho2);
  if (diamond) rep.set("certified_equation", certify + 1);
  for (int i = 0; i < 2; ++i) {
    rep.set("c" + idx(i), s.cone(i));
    if (s.c_override[i]) rep.set("c" + idx(i) + "_computed", s.c[i]);
  }
  rep.record_settings(settings);
  for (int i = 0; i < 2; ++i) {
    if (diamond && i != certify) continue;
    const int l = 1 - i;
    auto k = system_constants(s, mg, i, rho1, rho2, settings);
    ConditionReport eq("equation_" + idx(i));
    eq.add_clause(k.report);
    if (!k.hypotheses_ok()) {
      eq.note("stopped", "measure hypotheses fail");
      rep.add_clause(eq);
      continue;
    }
    for (int j = 0; j < 2; ++j)
      eq.add_clause(system_domination(s, mg, i, j, rho, true, settings));
    const double ci = s.cone(i), cl = s.cone(l);
    const Interval own = diamond ? Interval{0.0, rho[i] / ci}
                                 : Interval{rho[i], rho[i] / ci};
    const Interval other{-rho[l] / cl, rho[l] / cl};
    const Interval u_box = i == 0 ? own : other;
    const Interval v_box = i == 0 ? other : own;
    const auto env = box_extremum(s.eq[i].f, s.eq[i].kernel.ab, u_box, v_box,
                                  rho[i], Extremum::Inf, settings.box_grid);
    const auto& e = s.eq[i];
    const double g1 = e.gammas[0].c2 * k.gamma_norm[0] / k.D;
    const double g2 = e.gammas[1].c2 * k.gamma_norm[1] / k.D;
    const double bracket = (g1 * (1.0 - k.A2) + g2 * k.A21) * k.J_ab[0] +
                           (g1 * k.A12 + g2 * (1.0 - k.A1)) * k.J_ab[1] +
                           k.inv_M;
    const double lhs = env.value * bracket;
    eq.set("envelope_u_lo", u_box.lo);
    eq.set("envelope_u_hi", u_box.hi);
    eq.set("envelope_v_lo", v_box.lo);
    eq.set("envelope_v_hi", v_box.hi);
    eq.set("envelope_f", env.raw);
    eq.set("envelope", env.value);
    eq.set("envelope_at_t", env.t);
    eq.set("envelope_at_u", env.u);
    eq.set("envelope_at_v", env.v);
    eq.set("bracket", bracket);
    eq.set("threshold", 1.0 / bracket);
    eq.set("f_bound", rho[i] / bracket);
    ConditionReport sc("nonlinearity_nonnegative");
    sc.set("sampled_min", env.sampled_min);
    sc.set_verdict(env.sampled_min >= 0.0 ? Verdict::Pass : Verdict::Fail);
    eq.add_clause(sc);
    ConditionReport ineq("envelope_gt_1");
    ineq.set("lhs", lhs);
    ineq.set("margin", lhs - 1.0);
    ineq.set("tol", settings.tol);
    ineq.set_verdict(lhs - 1.0 > settings.tol ? Verdict::Pass : Verdict::Fail);
    eq.add_clause(ineq);
    eq.set("lhs", lhs);
    eq.set("margin", lhs - 1.0);
    rep.add_clause(eq);
  }
  return rep;
}

ExistenceSummary system_multiplicity(const SystemSpec& s,
                                     std::vector<SystemVerdict> verdicts) {
  ExistenceSummary out;
  std::stable_sort(verdicts.begin(), verdicts.end(),
                   [](const auto& a, const auto& b) {
                     return a.rho[0] != b.rho[0] ? a.rho[0] < b.rho[0]
                                                 : a.rho[1] < b.rho[1];
                   });
  std::vector<const SystemVerdict*> ok;
  for (const auto& v : verdicts) {
    if (v.report.passed())
      ok.push_back(&v);
    else
      out.notes.push_back(std::string(to_string(v.kind)) + " at " +
                          radii_text(v.rho[0], v.rho[1]) +
                          " did not pass and is ignored");
  }
  const std::array<double, 2> c{s.cone(0), s.cone(1)};
  auto is0 = [](IndexKind k) { return k != IndexKind::I1; };
  // gap between consecutive verdicts a (inner) and b (outer)
  auto gap_ok = [&](const SystemVerdict& a, const SystemVerdict& b) {
    for (int i = 0; i < 2; ++i) {
      const double inner = is0(a.kind) ? a.rho[i] / c[i] : a.rho[i];
      if (!(inner < b.rho[i])) return false;
    }
    return true;
  };
  auto window_ok = [&](std::size_t start, std::size_t len) {
    for (std::size_t k = start; k < start + len; ++k) {
      if (k > start && ok[k]->kind == IndexKind::I0Diamond) return false;
      if (k + 1 < start + len) {
        if (is0(ok[k]->kind) == is0(ok[k + 1]->kind)) return false;
        if (!gap_ok(*ok[k], *ok[k + 1])) return false;
      }
    }
    return true;
  };
  for (std::size_t len = 4; len >= 2; --len) {
    if (ok.size() < len) continue;
    for (std::size_t start = 0; start + len <= ok.size(); ++start) {
      if (!window_ok(start, len)) continue;
      const bool i0_first = is0(ok[start]->kind);
      out.pattern = "S" + std::to_string(2 * (len - 1) - (i0_first ? 1 : 0));
      out.solutions = static_cast<int>(len - 1);
      for (std::size_t k = start; k + 1 < start + len; ++k) {
        const auto& a = *ok[k];
        const auto& b = *ok[k + 1];
        Localization loc;
        const std::string in = radii_text(a.rho[0], a.rho[1]);
        const std::string outr = radii_text(b.rho[0], b.rho[1]);
        for (int i = 0; i < 2; ++i) {
          const auto& kk = s.eq[i].kernel;
          const double top = is0(a.kind) ? b.rho[i] : b.rho[i] / c[i];
          const bool nonneg = kk.sign_class != SignClass::SignChanging;
          loc.windows.push_back(
              {{0.0, 1.0}, nonneg ? 0.0 : -top, top, i, "norm"});
          loc.windows.push_back({kk.ab, 0.0, top, i, "cone"});
        }
        if (is0(a.kind)) {
          loc.set = "K_" + outr + " \\ closure(V_" + in + ")";
          out.notes.push_back("solution " + std::to_string(k - start + 1) +
                              ": min of u on [a1,b1] >= " +
                              format_number(a.rho[0]) +
                              " or min of v on [a2,b2] >= " +
                              format_number(a.rho[1]));
        } else {
          loc.set = "V_" + outr + " \\ closure(K_" + in + ")";
          out.notes.push_back("solution " + std::to_string(k - start + 1) +
                              ": ||u|| >= " + format_number(a.rho[0]) +
                              " or ||v|| >= " + format_number(a.rho[1]));
        }
        out.localizations.push_back(loc);
      }
      return out;
    }
  }
  out.notes.push_back("no multiplicity pattern matches the passing checks");
  return out;
}

SystemNonexistence system_nonexistence(const SystemSpec& s,
                                       const ReducedMeasures& measures,
                                       NonexistenceMode mode, int sub_index,
                                       const Settings& settings) {
  s.validate(settings);
  if (mode == NonexistenceMode::Mixed && sub_index != 0 && sub_index != 1)
    throw DomainError("mixed mode needs the sublinear equation (1 or 2)");
  const auto rule = QuadratureRule::from(settings);
  SystemNonexistence out;
  auto& rep = out.report;
  rep = ConditionReport("system_nonexistence");
  rep.note("mode", mode == NonexistenceMode::Sub     ? "sub"
                   : mode == NonexistenceMode::Super ? "super"
                                                     : "mixed");
  rep.note("domination",
           "H_ij versus alpha_ij over the whole cone is not checked here");
  rep.record_settings(settings);
  for (int i = 0; i < 2; ++i) {
    const auto& e = s.eq[i];
    const bool sub = mode == NonexistenceMode::Sub ||
                     (mode == NonexistenceMode::Mixed && i == sub_index);
    out.sublinear[i] = sub;
    ConditionReport eq("equation_" + idx(i));
    eq.note("role", sub ? "sublinear" : "superlinear");
    std::array<std::array<double, 2>, 2> ag{};  // [measure j][gamma k]
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        ag[j][k] = measures.at(i, j).apply(e.gammas[k].gamma, rule);
        eq.set("alpha_" + idx(i) + idx(j) + "_gamma_" + idx(i) + idx(k),
               ag[j][k]);
      }
    for (int j = 0; j < 2; ++j) {
      ConditionReport c("alpha_" + idx(i) + idx(j) + "_gamma_lt_1");
      c.set("value", ag[j][j]);
      c.set_verdict(ag[j][j] < 1.0 ? Verdict::Pass : Verdict::Fail);
      eq.add_clause(c);
    }
    const double D = (1.0 - ag[0][0]) * (1.0 - ag[1][1]) - ag[0][1] * ag[1][0];
    eq.set("D", D);
    ConditionReport dc("D_positive");
    dc.set("D", D);
    dc.set_verdict(D > 0.0 ? Verdict::Pass : Verdict::Fail);
    eq.add_clause(dc);
    if (!eq.passed()) {
      rep.add_clause(eq);
      continue;
    }
    const auto& ab = e.kernel.ab;
    const double lo = sub ? 0.0 : ab.lo, hi = sub ? 1.0 : ab.hi;
    std::array<double, 2> J{};
    for (int j = 0; j < 2; ++j) {
      J[j] = transformed_integral(e.kernel, measures.at(i, j), e.g, e.g_breaks,
                                  lo, hi, rule);
      eq.set("K_" + idx(i) + idx(j) + "_integral", J[j]);
    }
    auto F = [&](double t) {
      double g1 = e.gammas[0].gamma(t), g2 = e.gammas[1].gamma(t);
      if (sub) g1 = std::abs(g1), g2 = std::abs(g2);
      return kernel_weight_integral(e.kernel, e.g, e.g_breaks, t, lo, hi, sub,
                                    rule) +
             (g1 * (1.0 - ag[1][1]) + g2 * ag[1][0]) / D * J[0] +
             (g1 * ag[0][1] + g2 * (1.0 - ag[0][0])) / D * J[1];
    };
    std::vector<double> extra{ab.lo, ab.hi};
    const auto r = sup_inf_over_t(F, lo, hi, sub ? Extremum::Sup : Extremum::Inf,
                                  settings.grid_n, extra);
    out.threshold[i] = 1.0 / r.value;
    eq.set(sub ? "inv_N" : "inv_P", r.value);
    eq.set(sub ? "N" : "P", out.threshold[i]);
    eq.set("attained_t", r.location);
    rep.add_clause(eq);
  }
  return out;
}

ConditionReport system_check_growth(const Nonlinearity& f, int i, double slope,
                                    Growth direction, Interval t_range,
                                    Interval own, Interval other, int grid_n) {
  if (!(slope > 0.0)) throw DomainError("growth slope must be positive");
  ConditionReport rep("growth_" + idx(i) +
                      (direction == Growth::Above ? "_above" : "_below"));
  rep.set("slope", slope);
  rep.set("own_lo", own.lo);
  rep.set("own_hi", own.hi);
  rep.set("other_lo", other.lo);
  rep.set("other_hi", other.hi);
  rep.note("scope", "verified on the tested range only");
  const bool logscale = own.lo > 0.0 && own.hi / own.lo > 100.0;
  std::vector<double> us, ws, ts;
  for (int k = 0; k < grid_n; ++k) {
    const double r = static_cast<double>(k) / (grid_n - 1);
    const double u = logscale ? own.lo * std::pow(own.hi / own.lo, r)
                              : own.lo + r * own.width();
    if (u != 0.0) us.push_back(u);
  }
  const int nw = other.lo == other.hi ? 1 : 33;
  for (int k = 0; k < nw; ++k)
    ws.push_back(nw == 1 ? other.lo : other.lo + other.width() * k / (nw - 1));
  const int nt = t_range.lo == t_range.hi ? 1 : 17;
  for (int k = 0; k < nt; ++k)
    ts.push_back(nt == 1 ? t_range.lo
                         : t_range.lo + t_range.width() * k / (nt - 1));
  double worst = INFINITY, wt = 0, wu = 0, ww = 0;
  for (double t : ts)
    for (double u : us)
      for (double w : ws) {
        const double fv = i == 0 ? f(t, u, w) : f(t, w, u);
        if (std::isnan(fv))
          throw DomainError("nonlinearity is undefined during growth check");
        const double d = direction == Growth::Above ? fv - slope * u
                                                    : slope * std::abs(u) - fv;
        const double m = d / std::abs(u);
        if (m < worst) worst = m, wt = t, wu = u, ww = w;
      }
  rep.set("margin", worst);
  rep.set("worst_t", wt);
  rep.set("worst_own", wu);
  rep.set("worst_other", ww);
  rep.set_verdict(worst > 0.0 ? Verdict::Pass : Verdict::Fail);
  return rep;
}

}  // namespace hammer
