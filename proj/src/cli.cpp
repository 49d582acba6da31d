#include "hammerstein/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "hammerstein/expression.hpp"
#include "hammerstein/loader.hpp"
#include "shipped_configs.hpp"

namespace hammer::cli {

std::vector<std::string> shipped_names() {
  std::vector<std::string> out;
  for (const auto& [name, body] : shipped::configs) out.emplace_back(name);
  return out;
}

std::string shipped_config(const std::string& name) {
  for (const auto& [n, body] : shipped::configs)
    if (n == name) return std::string(body);
  return {};
}

namespace {

struct Options {
  std::string config, plan, out, check, alpha, u0, name;
  std::vector<std::string> rho, params;
  std::optional<int> panels, grid_n, max_iter, nodes;
  std::optional<double> tol, damping;
};

std::string full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Constants parse_params(const std::vector<std::string>& ps) {
  Constants c;
  for (const auto& p : ps) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("--param expects name=value, got '" + p + "'", 0);
    try {
      c[p.substr(0, eq)] = evaluate_constant(p.substr(eq + 1));
    } catch (const ExpressionError& e) {
      throw ConfigError("--param " + p + ": " + e.what(), 0);
    }
  }
  return c;
}

ModelConfig load_model_from(const Options& o) {
  const auto params = parse_params(o.params);
  if (!o.name.empty()) {
    const auto text = shipped_config(o.name);
    if (text.empty()) {
      std::string names;
      for (const auto& n : shipped_names()) names += " " + n;
      throw ConfigError("unknown example '" + o.name + "'; shipped:" + names,
                        0);
    }
    try {
      return load_model(parse_config(text), params);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), e.line(), o.name + ".toml");
    }
  }
  if (o.config.empty()) throw ConfigError("--config is required", 0);
  const auto root = load_config_file(o.config);
  try {
    return load_model(root, params);
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), e.line(), o.config);
  }
}

Settings with_overrides(Settings s, const Options& o, bool use_tol) {
  if (o.panels) s.panels = *o.panels;
  if (o.grid_n) s.grid_n = *o.grid_n;
  if (use_tol && o.tol) s.tol = *o.tol;
  if (s.panels < 1 || s.grid_n < 2 || !(s.tol > 0.0))
    throw ConfigError("numeric settings must be positive", 0);
  return s;
}

std::vector<CheckSpec> plan_checks(const ModelConfig& m, const Options& o) {
  if (!o.plan.empty()) {
    const auto root = load_config_file(o.plan);
    try {
      return load_checks(root, m.is_system(), m.constants);
    } catch (const ConfigError& e) {
      throw ConfigError(e.what(), e.line(), o.plan);
    }
  }
  if (!o.check.empty()) {
    // a single ad-hoc check assembled from flags
    std::string text = "[[check]]\nkind = \"" + o.check + "\"\n";
    if (o.rho.empty()) throw ConfigError("--check needs --rho", 0);
    text += "rho = ";
    if (m.is_system()) {
      if (o.rho.size() != 2)
        throw ConfigError("a system check needs --rho r1 r2", 0);
      text += "[\"" + o.rho[0] + "\", \"" + o.rho[1] + "\"]\n";
    } else {
      if (o.rho.size() != 1) throw ConfigError("--rho takes one value", 0);
      text += "\"" + o.rho[0] + "\"\n";
    }
    auto root = parse_config(text);
    if (!o.alpha.empty()) {
      auto am = load_config_file(o.alpha);
      auto& chk = root.find("check")->items.front();
      if (m.is_system()) {
        for (auto& member : am.members) chk.members.push_back(member);
      } else {
        // either `alpha = {...}` or the measure table itself
        const ConfigValue* inner = am.find("alpha");
        ConfigValue alpha = inner ? *inner : am;
        chk.members.emplace_back("alpha", alpha);
      }
    }
    return load_checks(root, m.is_system(), m.constants);
  }
  return m.checks;
}

const char* kind_key(IndexKind k) {
  switch (k) {
    case IndexKind::I1: return "index1";
    case IndexKind::I0: return "index0";
    case IndexKind::I0Diamond: return "index0_diamond";
  }
  return "?";
}

std::string statement(const ExistenceSummary& s) {
  static const char* words[] = {"zero", "one", "two", "three", "four"};
  if (s.solutions <= 0) return "no conclusion";
  const std::string n =
      s.solutions < 5 ? words[s.solutions] : std::to_string(s.solutions);
  return "at least " + n + " nontrivial solution" + (s.solutions > 1 ? "s" : "");
}

void model_header(std::ostream& r, const ModelConfig& m) {
  r << "model = " << m.name << "\n";
  if (m.kind == ModelKind::Single) {
    const auto& p = *m.problem;
    r << "kernel = " << p.kernel.name << "\n";
    r << "sign_class = " << to_string(p.kernel.sign_class) << "\n";
    r << "a = " << format_number(p.kernel.ab.lo) << "\n";
    r << "b = " << format_number(p.kernel.ab.hi) << "\n";
    r << "c = " << format_number(p.cone()) << "\n";
    if (p.c_override) r << "c_computed = " << format_number(p.c) << "\n";
    r << "gamma_norm = " << format_number(p.gamma.norm()) << "\n";
    return;
  }
  const auto& s = *m.system;
  if (m.elliptic) r << m.elliptic->report.to_text();
  for (int i = 0; i < 2; ++i) {
    const std::string p = "eq" + std::to_string(i + 1) + ".";
    r << p << "kernel = " << s.eq[i].kernel.name << "\n";
    r << p << "sign_class = " << to_string(s.eq[i].kernel.sign_class) << "\n";
    r << p << "c = " << format_number(s.cone(i)) << "\n";
    if (s.c_override[i])
      r << p << "c_computed = " << format_number(s.c[i]) << "\n";
  }
}

struct VerifyResult {
  bool all_pass = true;
  std::optional<ExistenceSummary> summary;
};

VerifyResult verify_single(const ModelConfig& m,
                           const std::vector<CheckSpec>& checks,
                           const Settings& s, std::ostream& r) {
  const auto& p = *m.problem;
  VerifyResult res;
  std::vector<IndexVerdict> verdicts;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const auto& cs = checks[k];
    const std::string pre = "check" + std::to_string(k + 1) + ".";
    auto rep = cs.kind == IndexKind::I1 ? index1_check(p, cs.rho[0], cs.alpha, s)
                                        : index0_check(p, cs.rho[0], cs.alpha, s);
    r << pre << "kind = " << kind_key(cs.kind) << "\n";
    r << pre << "rho = " << format_number(cs.rho[0]) << "\n";
    r << rep.to_text(pre);
    res.all_pass = res.all_pass && rep.passed();
    verdicts.push_back({cs.rho[0], cs.kind, rep});
  }
  if (checks.size() >= 2) res.summary = single_multiplicity(p, verdicts);
  return res;
}

VerifyResult verify_system(const ModelConfig& m,
                           const std::vector<CheckSpec>& checks,
                           const Settings& s, std::ostream& r) {
  const auto& sys = *m.system;
  VerifyResult res;
  std::vector<SystemVerdict> verdicts;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const auto& cs = checks[k];
    const std::string pre = "check" + std::to_string(k + 1) + ".";
    ConditionReport rep("check");
    if (cs.kind == IndexKind::I1)
      rep = system_index1_check(sys, cs.rho[0], cs.rho[1], cs.grid, s);
    else
      rep = system_index0_check(
          sys, cs.rho[0], cs.rho[1], cs.grid,
          cs.kind == IndexKind::I0 ? Index0Variant::Full : Index0Variant::Diamond,
          cs.certify, s);
    r << pre << "kind = " << kind_key(cs.kind) << "\n";
    r << pre << "rho1 = " << format_number(cs.rho[0]) << "\n";
    r << pre << "rho2 = " << format_number(cs.rho[1]) << "\n";
    if (cs.kind == IndexKind::I0Diamond)
      r << pre << "certify = " << cs.certify + 1 << "\n";
    r << rep.to_text(pre);
    res.all_pass = res.all_pass && rep.passed();
    verdicts.push_back({cs.rho, cs.kind, rep});
  }
  if (checks.size() >= 2) res.summary = system_multiplicity(sys, verdicts);
  return res;
}

// Runs the plan; returns the exit status and writes the report.
int run_verify(const ModelConfig& m, const std::vector<CheckSpec>& checks,
               const Settings& s, std::ostream& r) {
  if (checks.empty())
    throw SpecificationError("the plan holds no checks");
  auto res = m.is_system() ? verify_system(m, checks, s, r)
                           : verify_single(m, checks, s, r);
  bool ok = res.all_pass;
  if (res.summary) {
    r << res.summary->to_text("existence.");
    r << "existence.statement = " << statement(*res.summary) << "\n";
    ok = ok && res.summary->solutions > 0;
  }
  r << "verify.status = " << (ok ? "pass" : "fail") << "\n";
  return ok ? Ok : Failed;
}

std::pair<double, double> parse_u0(const std::string& spec, const SolvePlan& plan) {
  if (spec.empty()) return {plan.u0, plan.v0};
  if (spec.rfind("const:", 0) != 0)
    throw ConfigError("--u0 expects const:X or const:X,Y", 0);
  const std::string body = spec.substr(6);
  const auto comma = body.find(',');
  try {
    const double u = evaluate_constant(body.substr(0, comma));
    const double v = comma == std::string::npos
                         ? u
                         : evaluate_constant(body.substr(comma + 1));
    return {u, v};
  } catch (const ExpressionError& e) {
    throw ConfigError("--u0: " + std::string(e.what()), 0);
  }
}

void write_csv(const SolutionProfile& sol, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'", 0);
  f << (sol.is_system() ? "t,u,v\n" : "t,u\n");
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    f << full(sol.grid[i]) << "," << full(sol.u[i]);
    if (sol.is_system()) f << "," << full(sol.v[i]);
    f << "\n";
  }
}

void window_lines(std::ostream& r, const std::string& pre,
                  const std::vector<LocalizationWindow>& ws,
                  const std::vector<bool>& flags) {
  for (std::size_t j = 0; j < ws.size(); ++j) {
    const auto& w = ws[j];
    const std::string p = pre + std::to_string(j + 1) + ".";
    if (!w.label.empty()) r << p << "label = " << w.label << "\n";
    r << p << "component = " << (w.component == 0 ? "u" : "v") << "\n";
    r << p << "t = [" << format_number(w.t_range.lo) << ", "
      << format_number(w.t_range.hi) << "]\n";
    r << p << "lower = " << format_number(w.lower) << "\n";
    r << p << "upper = " << format_number(w.upper) << "\n";
    r << p << "holds = " << (flags[j] ? "true" : "false") << "\n";
  }
}

int run_solve(const ModelConfig& m, const Options& o, const Settings& s,
              std::ostream& r, const std::string& csv) {
  SolverSettings st = m.solve.settings;
  if (o.tol) st.tol = *o.tol;
  if (o.damping) st.damping = *o.damping;
  if (o.max_iter) st.max_iter = *o.max_iter;
  if (o.nodes) st.nodes = *o.nodes;
  if (!(st.max_iter > 0) || st.nodes < 2)
    throw ConfigError("solver settings must be positive", 0);
  const auto [u0, v0] = parse_u0(o.u0, m.solve);
  const auto x0 = SolutionProfile::constant(st.nodes, u0, m.is_system(), v0);
  r << "solve.nodes = " << st.nodes << "\n";
  r << "solve.u0 = " << format_number(u0) << "\n";
  if (m.is_system()) r << "solve.v0 = " << format_number(v0) << "\n";
  r << "solve.damping_initial = " << format_number(st.damping) << "\n";
  r << "solve.tol = " << format_number(st.tol) << "\n";
  SolutionProfile sol;
  try {
    sol = m.is_system() ? solve(*m.system, x0, st) : solve(*m.problem, x0, st);
  } catch (const DivergenceError& e) {
    r << "solve.status = diverged\n";
    r << "solve.diverged_at = " << e.iteration() << "\n";
    return Failed;
  }
  r << "solve.status = " << (sol.converged ? "converged" : "not-converged")
    << "\n";
  r << "solve.iterations = " << sol.iterations << "\n";
  r << "solve.damping_final = " << format_number(sol.damping) << "\n";
  r << "solve.residual = " << format_number(sol.residual) << "\n";
  auto range = [](const std::vector<double>& x) {
    return std::pair{*std::min_element(x.begin(), x.end()),
                     *std::max_element(x.begin(), x.end())};
  };
  const auto [ulo, uhi] = range(sol.u);
  r << "solve.u_min = " << format_number(ulo) << "\n";
  r << "solve.u_max = " << format_number(uhi) << "\n";
  if (m.is_system()) {
    const auto [vlo, vhi] = range(sol.v);
    r << "solve.v_min = " << format_number(vlo) << "\n";
    r << "solve.v_max = " << format_number(vhi) << "\n";
  }
  const auto flags = localization_check(sol, m.solve.windows);
  window_lines(r, "solve.window.", m.solve.windows, flags);

  // windows of the solutions certified by the configured checks
  if (m.checks.size() >= 2) {
    std::ostringstream sink;
    auto res = m.is_system() ? verify_system(m, m.checks, s, sink)
                             : verify_single(m, m.checks, s, sink);
    if (res.summary)
      for (std::size_t i = 0; i < res.summary->localizations.size(); ++i) {
        const auto& loc = res.summary->localizations[i];
        const auto f = localization_check(sol, loc.windows);
        const std::string pre = "solve.certified." + std::to_string(i + 1) + ".";
        r << pre << "set = " << loc.set << "\n";
        window_lines(r, pre + "window.", loc.windows, f);
        const bool inside = std::all_of(f.begin(), f.end(), [](bool b) { return b; });
        r << pre << "profile_inside = " << (inside ? "true" : "false") << "\n";
      }
  }
  if (!csv.empty()) {
    write_csv(sol, csv);
    r << "solve.csv = " << csv << "\n";
  }
  return sol.converged ? Ok : Failed;
}

int run_nonexist(const ModelConfig& m, const Settings& s, std::ostream& r) {
  const auto& plan = m.nonexist;
  if (!plan.present) throw SpecificationError("the config has no [nonexist] section");
  bool ok = true;
  if (m.kind == ModelKind::Single) {
    const auto& p = *m.problem;
    if (plan.mode == NonexistenceMode::Mixed)
      throw SpecificationError("mixed mode applies to systems only");
    const bool super = plan.mode == NonexistenceMode::Super;
    auto thr = nonexistence_thresholds(p, plan.alpha, s);
    r << thr.report.to_text("nonexist.");
    ok = thr.report.passed();
    if (ok) {
      const auto growth =
          super ? check_growth(p.f, thr.M_alpha, Growth::Above, p.kernel.ab,
                               plan.u_range, plan.grid_n)
                : check_growth(p.f, thr.m_alpha, Growth::Below, {0.0, 1.0},
                               plan.u_range, plan.grid_n);
      r << growth.to_text("nonexist.");
      ok = growth.passed();
      if (p.H.is_zero() && plan.alpha.is_zero()) {
        r << "nonexist.domination = trivial\n";
      } else {
        const double top = std::max(std::abs(plan.u_range.lo),
                                    std::abs(plan.u_range.hi));
        const Interval box = p.kernel.sign_class == SignClass::SignChanging
                                 ? Interval{-top, top}
                                 : Interval{0.0, top};
        std::vector<Interval> boxes(p.H.points.size(), box);
        const StieltjesMeasure ms[1] = {plan.alpha};
        auto dom = domination_check(p.H, ms, boxes,
                                    super ? Domination::AtLeast : Domination::AtMost,
                                    s.box_grid);
        r << dom.to_text("nonexist.");
        ok = ok && dom.passed();
      }
    }
  } else {
    const auto& sys = *m.system;
    auto res = system_nonexistence(sys, plan.reduced, plan.mode, plan.sub_index, s);
    r << res.report.to_text("nonexist.");
    ok = res.report.passed();
    for (int i = 0; i < 2 && ok; ++i) {
      const auto& eq = sys.eq[i];
      const Interval own = i == 0 ? plan.u_range : plan.v_range;
      const Interval other = i == 0 ? plan.v_range : plan.u_range;
      const auto g = res.sublinear[i]
                         ? system_check_growth(eq.f, i, res.threshold[i],
                                               Growth::Below, {0.0, 1.0}, own,
                                               other)
                         : system_check_growth(eq.f, i, res.threshold[i],
                                               Growth::Above, eq.kernel.ab, own,
                                               other);
      r << g.to_text("nonexist.eq" + std::to_string(i + 1) + ".");
      ok = g.passed();
    }
    r << "nonexist.domination = not-checked\n";
  }
  r << "nonexist.conclusion = "
    << (ok ? "no nontrivial solution in the cone" : "no conclusion") << "\n";
  r << "nonexist.status = " << (ok ? "pass" : "fail") << "\n";
  return ok ? Ok : Failed;
}

void emit(std::ostream& out, const std::string& text, const std::string& path) {
  out << text;
  if (!path.empty()) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write '" + path + "'", 0);
    f << text;
  }
}

int dispatch(const std::string& cmd, const Options& o, std::ostream& out) {
  const auto m = load_model_from(o);
  std::ostringstream r;
  r << "command = " << cmd << "\n";
  model_header(r, m);
  int status = Ok;
  if (cmd == "verify" || cmd == "verify-system") {
    if (cmd == "verify" && m.is_system())
      throw SpecificationError("this config describes a system; use verify-system");
    if (cmd == "verify-system" && !m.is_system())
      throw SpecificationError("this config describes a single equation; use verify");
    const auto s = with_overrides(m.settings, o, true);
    status = run_verify(m, plan_checks(m, o), s, r);
    emit(out, r.str(), o.out);
  } else if (cmd == "solve") {
    const auto s = with_overrides(m.settings, o, false);
    status = run_solve(m, o, s, r, o.out);
    out << r.str();
  } else if (cmd == "transform") {
    if (m.kind != ModelKind::Elliptic)
      throw SpecificationError("transform needs an [elliptic] config");
    const auto text = emit_system_config(m);
    if (!o.out.empty()) {
      std::ofstream f(o.out);
      if (!f) throw ConfigError("cannot write '" + o.out + "'", 0);
      f << text;
      r << "transform.out = " << o.out << "\n";
      out << r.str();
    } else {
      out << r.str() << "\n" << text;
    }
  } else if (cmd == "nonexist") {
    const auto s = with_overrides(m.settings, o, true);
    status = run_nonexist(m, s, r);
    emit(out, r.str(), o.out);
  } else if (cmd == "reproduce") {
    const auto s = with_overrides(m.settings, o, true);
    bool ok = true;
    if (!m.checks.empty()) ok = run_verify(m, m.checks, s, r) == Ok;
    if (m.nonexist.present) ok = run_nonexist(m, s, r) == Ok && ok;
    if (m.solve.present) {
      Options so = o;
      so.tol.reset();
      run_solve(m, so, s, r, o.out);
    }
    r << "reproduce.status = " << (ok ? "pass" : "fail") << "\n";
    status = ok ? Ok : Failed;
    out << r.str();
  }
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Fixed-point-index conditions for perturbed Hammerstein equations",
               "hammerstein"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c, bool config) {
    if (config) c->add_option("--config", o.config, "problem config file")->required();
    c->add_option("--param", o.params, "override a [params] entry, name=value");
    c->add_option("--panels", o.panels, "quadrature panels");
    c->add_option("--grid-n", o.grid_n, "grid for suprema over t");
    c->add_option("--tol", o.tol, "tolerance");
  };
  auto* verify = app.add_subcommand("verify", "check index conditions of one equation");
  auto* verify_sys = app.add_subcommand("verify-system", "check index conditions of a system");
  for (auto* c : {verify, verify_sys}) {
    common(c, true);
    c->add_option("--plan", o.plan, "file with [[check]] entries");
    c->add_option("--check", o.check, "index1, index0 or index0_diamond");
    c->add_option("--rho", o.rho, "radius (two for systems)");
    c->add_option("--alpha", o.alpha, "measure file for --check");
    c->add_option("--out", o.out, "also write the report here");
  }
  auto* solve_cmd = app.add_subcommand("solve", "Nystrom solution by damped Picard iteration");
  common(solve_cmd, true);
  solve_cmd->add_option("--u0", o.u0, "initial profile const:X or const:X,Y");
  solve_cmd->add_option("--damping", o.damping, "damping in (0,1]");
  solve_cmd->add_option("--max-iter", o.max_iter, "iteration cap");
  solve_cmd->add_option("--nodes", o.nodes, "grid nodes");
  solve_cmd->add_option("--out", o.out, "CSV profile t,u[,v]");
  auto* transform_cmd = app.add_subcommand("transform", "annulus problem to a system config");
  common(transform_cmd, true);
  transform_cmd->add_option("--out", o.out, "system config output");
  auto* nonexist_cmd = app.add_subcommand("nonexist", "non-existence thresholds and growth");
  common(nonexist_cmd, true);
  nonexist_cmd->add_option("--out", o.out, "also write the report here");
  auto* reproduce = app.add_subcommand("reproduce", "run a shipped example");
  reproduce->add_option("name", o.name, "reactor, beam, thermostat, nonexistence or elliptic")
      ->required();
  common(reproduce, false);
  reproduce->add_option("--damping", o.damping, "solver damping");
  reproduce->add_option("--max-iter", o.max_iter, "solver iteration cap");
  reproduce->add_option("--out", o.out, "CSV profile of the solver run");

  std::vector<const char*> argv{"hammerstein"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : BadInput;
  }
  std::string cmd;
  for (auto* c : app.get_subcommands()) cmd = c->get_name();
  try {
    return dispatch(cmd, o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return BadInput;
  }
}

}  // namespace hammer::cli
