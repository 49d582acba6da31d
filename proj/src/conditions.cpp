#include "hammerstein/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hammer {

namespace {

// How much a class path assumes: a path may only run kernels whose class
// guarantees at least as much.
int strength(SignClass c) {
  switch (c) {
    case SignClass::StronglyPositive:
      return 2;
    case SignClass::NonNegative:
      return 1;
    case SignClass::SignChanging:
      return 0;
  }
  return 0;
}

void check_path(SignClass path, const Problem& p) {
  if (strength(path) > strength(p.kernel.sign_class))
    throw ClassMismatch(std::string("a ") + to_string(p.kernel.sign_class) +
                        " problem cannot be checked on the " + to_string(path) +
                        " path");
}

void check_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw DomainError("radius must be positive, got " + format_number(rho));
}

void single_component_points(const Functional& H) {
  for (const auto& pt : H.points)
    if (pt.component != 0)
      throw SpecificationError(
          "a single-equation functional cannot read a second component");
}

ConditionReport alpha_clause(double alpha_gamma) {
  ConditionReport c("alpha_gamma_lt_1");
  c.set("alpha_gamma", alpha_gamma);
  c.set("margin", 1.0 - alpha_gamma);
  c.set_verdict(alpha_gamma < 1.0 ? Verdict::Pass : Verdict::Fail);
  return c;
}

ConditionReport sign_clause(double sampled_min) {
  ConditionReport c("nonlinearity_nonnegative");
  c.set("sampled_min", sampled_min);
  c.set_verdict(sampled_min >= 0.0 ? Verdict::Pass : Verdict::Fail);
  return c;
}

// Value range of u(t) for u on the boundary of K_rho (outer = false) or
// V_rho (outer = true).
Interval boundary_range(const Problem& p, SignClass path, double t, double rho,
                        bool v_boundary) {
  const double c = p.cone();
  const bool in_ab = p.kernel.ab.contains(t, 1e-14);
  if (!v_boundary) {
    if (in_ab || path == SignClass::StronglyPositive) return {c * rho, rho};
    if (path == SignClass::NonNegative) return {0.0, rho};
    return {-rho, rho};
  }
  if (in_ab || path == SignClass::StronglyPositive) return {rho, rho / c};
  if (path == SignClass::NonNegative) return {0.0, rho / c};
  return {-rho / c, rho / c};
}

ConditionReport run_index(SignClass path, const Problem& p, double rho,
                          const StieltjesMeasure& alpha, const Settings& s,
                          bool index_one) {
  check_path(path, p);
  check_rho(rho);
  p.validate(s);
  single_component_points(p.H);
  const auto rule = QuadratureRule::from(s);
  const double c = p.cone();
  ConditionReport rep(index_one ? "index1" : "index0");
  rep.note("class_path", to_string(path));
  rep.set("rho", rho);
  rep.set("c", c);
  if (p.c_override) {
    rep.set("c_computed", p.c);
    rep.note("c_source", "override");
  }
  rep.record_settings(s);

  const double ag = alpha.apply(p.gamma.gamma, rule);
  rep.set("alpha_gamma", ag);
  rep.set("alpha_mass", alpha.mass(rule));
  rep.add_clause(alpha_clause(ag));
  if (!(ag < 1.0)) {
    rep.note("stopped", "alpha[gamma] >= 1");
    return rep;
  }

  std::vector<Interval> boxes;
  for (const auto& pt : p.H.points)
    boxes.push_back(boundary_range(p, path, pt.t, rho, !index_one));
  rep.add_clause(domination_check(
      p.H, std::span<const StieltjesMeasure>(&alpha, 1), boxes,
      index_one ? Domination::AtMost : Domination::AtLeast, s.box_grid));

  const bool sign_changing = path == SignClass::SignChanging;
  const bool full = index_one || path == SignClass::StronglyPositive;
  const double lo = full ? 0.0 : p.kernel.ab.lo;
  const double hi = full ? 1.0 : p.kernel.ab.hi;
  const double J =
      transformed_integral(p.kernel, alpha, p.g, p.g_breaks, lo, hi, rule);
  rep.set("K_integral", J);
  rep.set("integral_lo", lo);
  rep.set("integral_hi", hi);

  const bool use_abs = index_one && sign_changing;
  auto F = [&](double t) {
    double gt = p.gamma.gamma(t);
    if (use_abs) gt = std::abs(gt);
    return gt / (1.0 - ag) * J +
           kernel_weight_integral(p.kernel, p.g, p.g_breaks, t, lo, hi, use_abs,
                                  rule);
  };
  std::vector<double> extra{p.kernel.ab.lo, p.kernel.ab.hi};
  extra.insert(extra.end(), p.gamma.breakpoints.begin(),
               p.gamma.breakpoints.end());
  const auto br = sup_inf_over_t(F, lo, hi,
                                 index_one ? Extremum::Sup : Extremum::Inf,
                                 s.grid_n, extra);
  rep.set("bracket", br.value);
  rep.set("bracket_t", br.location);
  rep.set("threshold", 1.0 / br.value);

  Interval t_box{0.0, 1.0}, u_box;
  if (index_one) {
    if (path == SignClass::StronglyPositive)
      u_box = {c * rho, rho};
    else if (path == SignClass::NonNegative)
      u_box = {0.0, rho};
    else
      u_box = {-rho, rho};
  } else {
    if (path != SignClass::StronglyPositive) t_box = p.kernel.ab;
    u_box = {rho, rho / c};
  }
  const auto env =
      box_extremum(p.f, t_box, u_box, std::nullopt, rho,
                   index_one ? Extremum::Sup : Extremum::Inf, s.box_grid);
  rep.set("envelope_t_lo", t_box.lo);
  rep.set("envelope_t_hi", t_box.hi);
  rep.set("envelope_u_lo", u_box.lo);
  rep.set("envelope_u_hi", u_box.hi);
  rep.set("envelope_f", env.raw);
  rep.set("envelope", env.value);
  rep.set("envelope_at_t", env.t);
  rep.set("envelope_at_u", env.u);
  rep.set("f_bound", rho / br.value);
  rep.add_clause(sign_clause(env.sampled_min));

  const double lhs = env.value * br.value;
  const double margin = index_one ? 1.0 - lhs : lhs - 1.0;
  ConditionReport ineq(index_one ? "envelope_lt_1" : "envelope_gt_1");
  ineq.set("lhs", lhs);
  ineq.set("margin", margin);
  ineq.set("tol", s.tol);
  ineq.set_verdict(margin > s.tol ? Verdict::Pass : Verdict::Fail);
  rep.add_clause(ineq);
  rep.set("lhs", lhs);
  rep.set("margin", margin);
  return rep;
}

std::string radius_text(double r) { return format_number(r); }

}  // namespace

void Problem::validate(const Settings& s) const {
  kernel.validate();
  if (!gamma.gamma) throw SpecificationError("problem has no gamma term");
  if (!g) throw SpecificationError("problem has no weight g");
  if (!f.fn) throw SpecificationError("problem has no nonlinearity");
  const double cc = cone();
  if (!(cc > 0.0 && cc <= 1.0))
    throw DomainError("cone constant must lie in (0,1], got " +
                      format_number(cc));
  const auto rule = QuadratureRule::from(s);
  const double mass = integrate(
      rule, [&](double x) { return kernel.phi(x) * g(x); }, kernel.ab.lo,
      kernel.ab.hi, g_breaks);
  if (!(mass > 0.0))
    throw SpecificationError("the integral of phi * g over [a,b] must be "
                             "positive");
}

Problem make_problem(const KernelBundle& bundle, RealFn g, Functional H,
                     Nonlinearity f, std::string name) {
  if (bundle.gammas.size() != 1)
    throw SpecificationError("kernel '" + bundle.kernel.name +
                             "' carries " + std::to_string(bundle.gammas.size()) +
                             " gamma terms; a single equation needs one");
  Problem p;
  p.name = std::move(name);
  p.kernel = bundle.kernel;
  p.gamma = bundle.gammas.front();
  p.g = std::move(g);
  p.H = std::move(H);
  p.f = std::move(f);
  p.c = bundle.c;
  return p;
}

std::vector<double> integrand_breaks(const KernelSpec& k,
                                     const std::vector<double>& g_breaks,
                                     double t) {
  auto br = k.s_breakpoints(t);
  br.insert(br.end(), g_breaks.begin(), g_breaks.end());
  br.push_back(k.ab.lo);
  br.push_back(k.ab.hi);
  return br;
}

double kernel_weight_integral(const KernelSpec& k, const RealFn& g,
                              const std::vector<double>& g_breaks, double t,
                              double lo, double hi, bool absolute,
                              const QuadratureRule& rule) {
  const auto br = integrand_breaks(k, g_breaks, t);
  if (absolute)
    return integrate(
        rule, [&](double x) { return std::abs(k.k(t, x)) * g(x); }, lo, hi, br);
  return integrate(rule, [&](double x) { return k.k(t, x) * g(x); }, lo, hi,
                   br);
}

double transformed_integral(const KernelSpec& k, const StieltjesMeasure& alpha,
                            const RealFn& g, const std::vector<double>& g_breaks,
                            double lo, double hi, const QuadratureRule& rule) {
  if (alpha.is_zero()) return 0.0;
  const auto K = transformed_kernel(k, alpha, rule);
  auto br = K.breakpoints;
  br.insert(br.end(), g_breaks.begin(), g_breaks.end());
  return integrate(rule, [&](double x) { return K(x) * g(x); }, lo, hi, br);
}

ConditionReport index1_check(const Problem& p, double rho,
                             const StieltjesMeasure& alpha, const Settings& s) {
  return run_index(p.kernel.sign_class, p, rho, alpha, s, true);
}

ConditionReport index0_check(const Problem& p, double rho,
                             const StieltjesMeasure& alpha, const Settings& s) {
  return run_index(p.kernel.sign_class, p, rho, alpha, s, false);
}

ConditionReport index1_check_as(SignClass path, const Problem& p, double rho,
                                const StieltjesMeasure& alpha,
                                const Settings& s) {
  return run_index(path, p, rho, alpha, s, true);
}

ConditionReport index0_check_as(SignClass path, const Problem& p, double rho,
                                const StieltjesMeasure& alpha,
                                const Settings& s) {
  return run_index(path, p, rho, alpha, s, false);
}

NonexistenceThresholds nonexistence_thresholds(const Problem& p,
                                               const StieltjesMeasure& alpha,
                                               const Settings& s) {
  p.validate(s);
  const auto rule = QuadratureRule::from(s);
  NonexistenceThresholds out;
  auto& rep = out.report;
  rep = ConditionReport("nonexistence");
  rep.record_settings(s);
  const double ag = alpha.apply(p.gamma.gamma, rule);
  rep.set("alpha_gamma", ag);
  rep.add_clause(alpha_clause(ag));
  if (!(ag < 1.0)) {
    rep.note("stopped", "alpha[gamma] >= 1");
    return out;
  }
  const auto& ab = p.kernel.ab;
  const double J01 =
      transformed_integral(p.kernel, alpha, p.g, p.g_breaks, 0.0, 1.0, rule);
  const double Jab =
      transformed_integral(p.kernel, alpha, p.g, p.g_breaks, ab.lo, ab.hi, rule);
  rep.set("K_integral_01", J01);
  rep.set("K_integral_ab", Jab);
  std::vector<double> extra{ab.lo, ab.hi};
  auto Fm = [&](double t) {
    return std::abs(p.gamma.gamma(t)) / (1.0 - ag) * J01 +
           kernel_weight_integral(p.kernel, p.g, p.g_breaks, t, 0.0, 1.0, true,
                                  rule);
  };
  auto FM = [&](double t) {
    return p.gamma.gamma(t) / (1.0 - ag) * Jab +
           kernel_weight_integral(p.kernel, p.g, p.g_breaks, t, ab.lo, ab.hi,
                                  false, rule);
  };
  const auto sm = sup_inf_over_t(Fm, 0.0, 1.0, Extremum::Sup, s.grid_n, extra);
  const auto sM =
      sup_inf_over_t(FM, ab.lo, ab.hi, Extremum::Inf, s.grid_n, extra);
  out.m_alpha = 1.0 / sm.value;
  out.M_alpha = 1.0 / sM.value;
  out.m_location = sm.location;
  out.M_location = sM.location;
  rep.set("inv_m_alpha", sm.value);
  rep.set("m_alpha", out.m_alpha);
  rep.set("m_alpha_t", sm.location);
  rep.set("inv_M_alpha", sM.value);
  rep.set("M_alpha", out.M_alpha);
  rep.set("M_alpha_t", sM.location);
  return out;
}

ConditionReport check_growth(const Nonlinearity& f, double slope,
                             Growth direction, Interval t_range,
                             Interval u_range, int grid_n) {
  if (!(slope > 0.0)) throw DomainError("growth slope must be positive");
  if (!std::isfinite(u_range.lo) || !std::isfinite(u_range.hi))
    throw DomainError("growth check needs a bounded u range");
  ConditionReport rep(direction == Growth::Above ? "growth_above"
                                                 : "growth_below");
  rep.set("slope", slope);
  rep.set("t_lo", t_range.lo);
  rep.set("t_hi", t_range.hi);
  rep.set("u_lo", u_range.lo);
  rep.set("u_hi", u_range.hi);
  rep.note("scope", "verified on the tested range only");

  // normalized margin; positive means the strict inequality holds
  auto margin = [&](double t, double u) {
    const double fv = f(t, u);
    if (std::isnan(fv))
      throw DomainError("nonlinearity is undefined at (" + format_number(t) +
                        ", " + format_number(u) + ")");
    const double d =
        direction == Growth::Above ? fv - slope * u : slope * std::abs(u) - fv;
    return d / std::abs(u);
  };
  const bool logscale = u_range.lo > 0.0 && u_range.hi / u_range.lo > 100.0;
  std::vector<double> us;
  for (int i = 0; i < grid_n; ++i) {
    const double r = static_cast<double>(i) / (grid_n - 1);
    const double u =
        logscale ? u_range.lo * std::pow(u_range.hi / u_range.lo, r)
                 : u_range.lo + r * u_range.width();
    if (u != 0.0) us.push_back(u);
  }
  std::vector<double> ts;
  const int nt = t_range.lo == t_range.hi ? 1 : 65;
  for (int i = 0; i < nt; ++i)
    ts.push_back(nt == 1 ? t_range.lo : t_range.lo + t_range.width() * i / (nt - 1));

  double worst = INFINITY, wt = ts.front(), wu = us.front();
  std::size_t wi = 0;
  for (double t : ts)
    for (std::size_t i = 0; i < us.size(); ++i) {
      const double m = margin(t, us[i]);
      if (m < worst) worst = m, wt = t, wu = us[i], wi = i;
    }
  // golden section in u at the worst t
  double a = us[wi == 0 ? 0 : wi - 1], b = us[std::min(wi + 1, us.size() - 1)];
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  auto safe = [&](double u) { return u == 0.0 ? INFINITY : margin(wt, u); };
  double f1 = safe(x1), f2 = safe(x2);
  for (int it = 0; it < 200 && b - a > 1e-12 * std::max(1.0, std::abs(b)); ++it) {
    if (f1 < f2) {
      b = x2, x2 = x1, f2 = f1, x1 = b - gr * (b - a), f1 = safe(x1);
    } else {
      a = x1, x1 = x2, f1 = f2, x2 = a + gr * (b - a), f2 = safe(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double mm = safe(xm);
  if (mm < worst) worst = mm, wu = xm;
  rep.set("margin", worst);
  rep.set("worst_t", wt);
  rep.set("worst_u", wu);
  rep.set_verdict(worst > 0.0 ? Verdict::Pass : Verdict::Fail);
  return rep;
}

const char* to_string(IndexKind k) {
  switch (k) {
    case IndexKind::I1:
      return "index1";
    case IndexKind::I0:
      return "index0";
    case IndexKind::I0Diamond:
      return "index0_diamond";
  }
  return "index0";
}

std::string ExistenceSummary::to_text(const std::string& prefix) const {
  std::ostringstream out;
  out << prefix << "solutions = " << solutions << "\n";
  out << prefix << "pattern = " << (pattern.empty() ? "none" : pattern) << "\n";
  for (std::size_t i = 0; i < localizations.size(); ++i) {
    const auto& loc = localizations[i];
    const std::string base = prefix + "solution." + std::to_string(i + 1) + ".";
    out << base << "set = " << loc.set << "\n";
    for (std::size_t j = 0; j < loc.windows.size(); ++j) {
      const auto& w = loc.windows[j];
      const std::string wb = base + "window." + std::to_string(j + 1) + ".";
      out << wb << "component = " << (w.component == 0 ? "u" : "v") << "\n";
      out << wb << "t = [" << format_number(w.t_range.lo) << ", "
          << format_number(w.t_range.hi) << "]\n";
      out << wb << "lower = " << format_number(w.lower) << "\n";
      out << wb << "upper = " << format_number(w.upper) << "\n";
    }
  }
  for (std::size_t i = 0; i < notes.size(); ++i)
    out << prefix << "note." << i + 1 << " = " << notes[i] << "\n";
  return out.str();
}

Localization single_localization(const Problem& p, IndexKind inner_kind,
                                 double inner, double outer) {
  const double c = p.cone();
  const auto cls = p.kernel.sign_class;
  const Interval all{0.0, 1.0};
  Localization loc;
  double lo_ab, hi;
  if (inner_kind == IndexKind::I0) {
    loc.set = "K_" + radius_text(outer) + " \\ closure(V_" + radius_text(inner) +
              ")";
    lo_ab = inner;
    hi = outer;
  } else {
    loc.set = "V_" + radius_text(outer) + " \\ closure(K_" + radius_text(inner) +
              ")";
    lo_ab = c * inner;
    hi = outer / c;
  }
  if (cls == SignClass::StronglyPositive) {
    loc.windows.push_back({all, lo_ab, hi, 0, "cone"});
  } else {
    loc.windows.push_back(
        {all, cls == SignClass::NonNegative ? 0.0 : -hi, hi, 0, "norm"});
    loc.windows.push_back({p.kernel.ab, lo_ab, hi, 0, "positivity"});
  }
  return loc;
}

ExistenceSummary single_multiplicity(const Problem& p,
                                     std::vector<IndexVerdict> verdicts) {
  ExistenceSummary out;
  std::stable_sort(verdicts.begin(), verdicts.end(),
                   [](const auto& a, const auto& b) { return a.rho < b.rho; });
  std::vector<const IndexVerdict*> ok;
  for (const auto& v : verdicts) {
    if (v.kind == IndexKind::I0Diamond)
      throw SpecificationError(
          "the one-component index-0 variant applies to systems only");
    if (v.report.passed())
      ok.push_back(&v);
    else
      out.notes.push_back(std::string(to_string(v.kind)) + " at rho=" +
                          radius_text(v.rho) + " did not pass and is ignored");
  }
  const double c = p.cone();
  std::vector<std::string> runs;
  std::size_t run_start = 0;
  auto close_run = [&](std::size_t end) {
    const std::size_t len = end - run_start + 1;
    if (len < 2) return;
    const bool i0_first = ok[run_start]->kind == IndexKind::I0;
    const int n = static_cast<int>(2 * (len - 1)) - (i0_first ? 1 : 0);
    runs.push_back(len <= 4 ? "S" + std::to_string(n) : "alternating chain");
  };
  for (std::size_t i = 0; i + 1 < ok.size(); ++i) {
    const auto& a = *ok[i];
    const auto& b = *ok[i + 1];
    if (a.kind == b.kind) {
      close_run(i);
      run_start = i + 1;
      continue;
    }
    if (a.kind == IndexKind::I0 && !(a.rho / c < b.rho))
      throw SpecificationError("gap condition rho1/c < rho2 fails for index0 at " +
                               radius_text(a.rho) + " followed by index1 at " +
                               radius_text(b.rho));
    if (a.kind == IndexKind::I1 && !(a.rho < b.rho))
      throw SpecificationError("gap condition rho1 < rho2 fails for index1 at " +
                               radius_text(a.rho) + " followed by index0 at " +
                               radius_text(b.rho));
    out.localizations.push_back(single_localization(p, a.kind, a.rho, b.rho));
    ++out.solutions;
  }
  if (!ok.empty()) close_run(ok.size() - 1);
  for (std::size_t i = 0; i < runs.size(); ++i)
    out.pattern += (i ? "+" : "") + runs[i];
  return out;
}

}  // namespace hammer
