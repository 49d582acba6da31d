#include "hammerstein/loader.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hammerstein/expression.hpp"

namespace hammer {

namespace {

std::string full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Expression compile_at(const ConfigValue& v, const std::vector<std::string>& vars,
                      const Constants& c) {
  std::string src;
  if (v.is_string()) src = v.str;
  else if (v.is_number()) src = full(v.num);
  else
    throw ConfigError(std::string("expected an expression, found ") +
                          v.type_name(),
                      v.line);
  try {
    return Expression::compile(src, vars, c);
  } catch (const ExpressionError& e) {
    throw ConfigError("in '" + src + "' column " + std::to_string(e.column()) +
                          ": " + e.what(),
                      v.line);
  }
}

std::string source_of(const ConfigValue& v) {
  return v.is_string() ? v.str : full(v.num);
}

// Function of one variable, written in t or s (or r for annulus weights).
RealFn univariate(const ConfigValue& v, const Constants& c) {
  auto e = compile_at(v, {"t", "s", "r"}, c);
  return [e](double x) { return e({x, x, x}); };
}

std::vector<double> number_list(const ConfigValue& v, const Constants& c) {
  if (!v.is_array())
    throw ConfigError(std::string("expected an array, found ") + v.type_name(),
                      v.line);
  std::vector<double> out;
  for (const auto& x : v.items) out.push_back(config_number(x, c));
  return out;
}

Interval interval_of(const ConfigValue& v, const Constants& c) {
  auto xs = number_list(v, c);
  if (xs.size() != 2 || !(xs[0] <= xs[1]))
    throw ConfigError("expected an interval [lo, hi] with lo <= hi", v.line);
  return {xs[0], xs[1]};
}

bool is_zero_value(const ConfigValue& v) {
  return (v.is_number() && v.num == 0.0) || (v.is_string() && v.str == "0");
}

std::string string_at(const ConfigValue& t, std::string_view key) {
  const auto& v = t.at(key);
  if (!v.is_string())
    throw ConfigError("'" + std::string(key) + "' must be a string", v.line);
  return v.str;
}

const ConfigValue& table_at(const ConfigValue& t, std::string_view key) {
  const auto& v = t.at(key);
  if (!v.is_table())
    throw ConfigError("'" + std::string(key) + "' must be a table", v.line);
  return v;
}

// points = [...] (component u), or u_points / v_points; h reads x1.. then y1..
Functional load_functional(const ConfigValue& v, const Constants& c,
                           bool system) {
  if (is_zero_value(v)) return Functional::zero();
  if (!v.is_table())
    throw ConfigError("a functional is 0 or { points = [...], h = \"...\" }",
                      v.line);
  Functional H;
  std::vector<std::string> vars;
  int counts[2] = {0, 0};
  auto add = [&](std::string_view key, int comp) {
    const auto* pts = v.find(key);
    if (!pts) return;
    for (double t : number_list(*pts, c)) {
      H.points.push_back({t, comp});
      vars.push_back((comp == 0 ? "x" : "y") + std::to_string(++counts[comp]));
    }
  };
  if (v.has("points") && v.has("u_points"))
    throw ConfigError("use either points or u_points", v.line);
  add(v.has("points") ? "points" : "u_points", 0);
  if (v.has("v_points")) {
    if (!system)
      throw ConfigError("v_points needs a system of two equations", v.line);
    add("v_points", 1);
  }
  const auto& hv = v.at("h");
  auto e = compile_at(hv, vars, c);
  H.h = [e](std::span<const double> x) { return e(x); };
  H.text = source_of(hv);
  for (const auto& p : H.points)
    if (!system && !(p.t >= 0.0 && p.t <= 1.0))
      throw ConfigError("evaluation point " + format_number(p.t) +
                            " lies outside [0,1]",
                        v.line);
  return H;
}

GammaSpec load_gamma(const ConfigValue& v, const Constants& c, Interval ab) {
  if (!v.is_table())
    throw ConfigError("a gamma term is a table { expr, c2 }", v.line);
  GammaSpec g;
  g.gamma = univariate(v.at("expr"), c);
  g.c2 = config_number(v, "c2", c);
  g.ab = ab;
  if (v.has("norm")) g.analytic_norm = config_number(v, "norm", c);
  if (const auto* b = v.find("breaks")) g.breakpoints = number_list(*b, c);
  return g;
}

KernelBundle load_kernel(const ConfigValue& v, const Constants& c) {
  if (!v.is_table()) throw ConfigError("kernel must be a table", v.line);
  try {
    if (v.has("builtin")) {
      ParamMap params;
      for (const auto& [k, x] : v.members)
        if (k != "builtin") params[k] = config_number(x, c);
      return builtin(string_at(v, "builtin"), params);
    }
    KernelBundle b;
    auto& k = b.kernel;
    k.name = v.has("name") ? string_at(v, "name") : "custom";
    auto e = compile_at(v.at("expr"), {"t", "s"}, c);
    k.k = [e](double t, double s) { return e({t, s}); };
    k.phi = univariate(v.at("phi"), c);
    k.c1 = config_number(v, "c1", c);
    k.ab = {config_number(v, "a", c, 0.0), config_number(v, "b", c, 1.0)};
    k.sign_class = v.has("class") ? parse_sign_class(string_at(v, "class"))
                                  : SignClass::StronglyPositive;
    auto breaks = [&](std::string_view key, const char* var) -> BreakpointFn {
      const auto* bv = v.find(key);
      if (!bv) return nullptr;
      if (!bv->is_array())
        throw ConfigError(std::string(key) + " must be an array", bv->line);
      std::vector<Expression> es;
      for (const auto& x : bv->items) es.push_back(compile_at(x, {var}, c));
      return [es](double x) {
        std::vector<double> out;
        for (const auto& ex : es) {
          const double b = ex({x});
          if (b > 0.0 && b < 1.0) out.push_back(b);
        }
        return out;
      };
    };
    k.s_breaks = breaks("s_breaks", "t");
    k.t_breaks = breaks("t_breaks", "s");
    b.c = k.c1;
    return b;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what(), v.line);
  }
}

Constants load_constants(const ConfigValue& root, const Constants& overrides) {
  Constants c{{"inf", INFINITY}};
  const auto* p = root.find("params");
  std::size_t used = 0;
  if (p) {
    if (!p->is_table()) throw ConfigError("params must be a table", p->line);
    for (const auto& [k, v] : p->members) {
      if (auto o = overrides.find(k); o != overrides.end()) {
        c[k] = o->second;
        ++used;
      } else {
        c[k] = config_number(v, c);
      }
    }
  }
  if (used != overrides.size())
    for (const auto& [k, v] : overrides)
      if (!p || !p->has(k))
        throw ConfigError("unknown parameter '" + k + "'", 0);
  return c;
}

std::optional<double> optional_number(const ConfigValue& t,
                                      std::string_view key,
                                      const Constants& c) {
  if (!t.has(key)) return std::nullopt;
  return config_number(t.at(key), c);
}

Problem load_single(const ConfigValue& root, const Constants& c,
                    const std::string& name) {
  const auto& e = table_at(root, "problem");
  auto bundle = load_kernel(e.at("kernel"), c);
  if (const auto* gv = e.find("gamma"))
    bundle.gammas = {load_gamma(*gv, c, bundle.kernel.ab)};
  if (bundle.gammas.size() != 1)
    throw ConfigError("a single equation needs exactly one gamma term",
                      e.line);
  bundle.c = std::min(bundle.kernel.c1, bundle.gammas[0].c2);
  RealFn g = e.has("g") ? univariate(e.at("g"), c) : [](double) { return 1.0; };
  auto fe = compile_at(e.at("f"), {"t", "u", "s"}, c);
  auto f = Nonlinearity::scalar(
      [fe](double t, double u) { return fe({t, u, t}); }, source_of(e.at("f")));
  Functional H = e.has("H") ? load_functional(e.at("H"), c, false)
                            : Functional::zero();
  try {
    auto p = make_problem(bundle, g, H, f, name);
    if (const auto* b = e.find("g_breaks")) p.g_breaks = number_list(*b, c);
    p.c_override = optional_number(e, "c_override", c);
    return p;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& err) {
    throw ConfigError(err.what(), e.line);
  }
}

SystemEquation load_system_equation(const ConfigValue& e, const Constants& c,
                                    std::optional<double>& c_override) {
  auto bundle = load_kernel(e.at("kernel"), c);
  for (int j = 0; j < 2; ++j) {
    const std::string key = "gamma" + std::to_string(j + 1);
    if (const auto* gv = e.find(key)) {
      if (bundle.gammas.size() < 2) bundle.gammas.resize(2);
      bundle.gammas[j] = load_gamma(*gv, c, bundle.kernel.ab);
    }
  }
  if (bundle.gammas.size() != 2 || !bundle.gammas[0].gamma ||
      !bundle.gammas[1].gamma)
    throw ConfigError("a system equation needs gamma1 and gamma2", e.line);
  RealFn g = e.has("g") ? univariate(e.at("g"), c) : [](double) { return 1.0; };
  auto fe = compile_at(e.at("f"), {"t", "u", "v", "s"}, c);
  auto f = Nonlinearity::coupled(
      [fe](double t, double u, double v) { return fe({t, u, v, t}); },
      source_of(e.at("f")));
  auto H1 = e.has("H1") ? load_functional(e.at("H1"), c, true)
                        : Functional::zero();
  auto H2 = e.has("H2") ? load_functional(e.at("H2"), c, true)
                        : Functional::zero();
  auto eq = make_equation(bundle, g, H1, H2, f);
  if (const auto* b = e.find("g_breaks")) eq.g_breaks = number_list(*b, c);
  c_override = optional_number(e, "c_override", c);
  return eq;
}

SystemSpec load_system(const ConfigValue& root, const Constants& c,
                       const std::string& name) {
  const auto& sys = table_at(root, "system");
  std::array<std::optional<double>, 2> co;
  try {
    auto e1 = load_system_equation(table_at(sys, "eq1"), c, co[0]);
    auto e2 = load_system_equation(table_at(sys, "eq2"), c, co[1]);
    auto s = make_system(std::move(e1), std::move(e2), name);
    s.c_override = co;
    return s;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& err) {
    throw ConfigError(err.what(), sys.line);
  }
}

std::pair<EllipticTransform, EllipticSource> load_elliptic(
    const ConfigValue& root, const Constants& c, const std::string& name) {
  const auto& e = table_at(root, "elliptic");
  EllipticSource src;
  auto& ep = src.problem;
  ep.name = name;
  ep.n = static_cast<int>(config_number(e, "n", c, 2.0));
  if (ep.n != config_number(e, "n", c, 2.0))
    throw ConfigError("dimension n must be an integer", e.line);
  ep.R1 = config_number(e, "R1", c);
  ep.R0 = config_number(e, "R0", c);
  ep.Reta = config_number(e, "Reta", c);
  ep.Rxi = config_number(e, "Rxi", c);
  ep.beta1 = config_number(e, "beta1", c);
  ep.beta2_tilde = config_number(e, "beta2t", c);
  for (int i = 0; i < 2; ++i) {
    const std::string k = std::to_string(i + 1);
    ep.g_tilde[i] = univariate(e.at("g" + k), c);
    src.g[i] = source_of(e.at("g" + k));
    if (const auto* b = e.find("g" + k + "_breaks"))
      ep.g_breaks[i] = number_list(*b, c);
    auto fe = compile_at(e.at("f" + k), {"r", "u", "v"}, c);
    ep.f[i] = Nonlinearity::coupled(
        [fe](double r, double u, double v) { return fe({r, u, v}); },
        source_of(e.at("f" + k)));
    src.f[i] = source_of(e.at("f" + k));
    if (const auto* ab = e.find("ab" + k)) {
      ep.ab[i] = interval_of(*ab, c);
      ep.ab_set[i] = true;
    }
    ep.c_override[i] = optional_number(e, "c" + k + "_override", c);
  }
  auto fn = [&](const char* key) {
    return e.has(key) ? load_functional(e.at(key), c, true)
                      : Functional::zero();
  };
  ep.H11 = fn("H11");
  ep.H12 = fn("H12");
  ep.H21 = fn("H21");
  ep.H22 = fn("H22");
  try {
    return {transform(ep), src};
  } catch (const Error& err) {
    throw ConfigError(err.what(), e.line);
  }
}

SolvePlan load_solve(const ConfigValue* t, const Constants& c) {
  SolvePlan plan;
  if (!t) return plan;
  if (!t->is_table()) throw ConfigError("solve must be a table", t->line);
  plan.present = true;
  plan.u0 = config_number(*t, "u0", c, 1.0);
  plan.v0 = config_number(*t, "v0", c, plan.u0);
  auto& st = plan.settings;
  st.nodes = static_cast<int>(config_number(*t, "nodes", c, st.nodes));
  st.damping = config_number(*t, "damping", c, st.damping);
  st.tol = config_number(*t, "tol", c, st.tol);
  st.max_iter = static_cast<int>(config_number(*t, "max_iter", c, st.max_iter));
  st.nodes_per_panel = static_cast<int>(
      config_number(*t, "nodes_per_panel", c, st.nodes_per_panel));
  if (const auto* a = t->find("adaptive")) {
    if (!a->is_bool()) throw ConfigError("adaptive must be a boolean", a->line);
    st.adaptive = a->flag;
  }
  if (const auto* ws = t->find("windows")) {
    if (!ws->is_array()) throw ConfigError("windows must be an array", ws->line);
    for (const auto& w : ws->items) {
      if (!w.is_table())
        throw ConfigError("a window is { t = [lo, hi], lower, upper }", w.line);
      LocalizationWindow lw;
      lw.t_range = w.has("t") ? interval_of(w.at("t"), c) : Interval{0.0, 1.0};
      lw.lower = config_number(w, "lower", c, -INFINITY);
      lw.upper = config_number(w, "upper", c, INFINITY);
      if (const auto* comp = w.find("component")) {
        if (comp->is_string() && (comp->str == "u" || comp->str == "v"))
          lw.component = comp->str == "v";
        else
          throw ConfigError("component must be \"u\" or \"v\"", comp->line);
      }
      lw.label = w.has("label") ? string_at(w, "label") : "";
      plan.windows.push_back(lw);
    }
  }
  return plan;
}

ReducedMeasures load_reduced(const ConfigValue& t, const Constants& c) {
  ReducedMeasures r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const std::string key =
          "alpha_" + std::to_string(i + 1) + std::to_string(j + 1);
      if (const auto* m = t.find(key)) r.at(i, j) = load_measure(*m, c);
    }
  return r;
}

NonexistPlan load_nonexist(const ConfigValue* t, const Constants& c) {
  NonexistPlan plan;
  if (!t) return plan;
  if (!t->is_table()) throw ConfigError("nonexist must be a table", t->line);
  plan.present = true;
  const std::string mode = t->has("mode") ? string_at(*t, "mode") : "super";
  if (mode == "sub") plan.mode = NonexistenceMode::Sub;
  else if (mode == "super") plan.mode = NonexistenceMode::Super;
  else if (mode == "mixed") plan.mode = NonexistenceMode::Mixed;
  else
    throw ConfigError("mode must be sub, super or mixed", t->at("mode").line);
  plan.sub_index = static_cast<int>(config_number(*t, "sub_index", c, 1.0)) - 1;
  if (plan.sub_index != 0 && plan.sub_index != 1)
    throw ConfigError("sub_index must be 1 or 2", t->line);
  if (const auto* a = t->find("alpha")) plan.alpha = load_measure(*a, c);
  plan.reduced = load_reduced(*t, c);
  if (const auto* u = t->find("u_range")) plan.u_range = interval_of(*u, c);
  if (const auto* v = t->find("v_range")) plan.v_range = interval_of(*v, c);
  plan.grid_n = static_cast<int>(config_number(*t, "grid_n", c, plan.grid_n));
  return plan;
}

}  // namespace

double config_number(const ConfigValue& v, const Constants& c) {
  if (v.is_number()) return v.num;
  if (v.is_string()) {
    try {
      return evaluate_constant(v.str, c);
    } catch (const ExpressionError& e) {
      throw ConfigError("in '" + v.str + "' column " +
                            std::to_string(e.column()) + ": " + e.what(),
                        v.line);
    }
  }
  throw ConfigError(std::string("expected a number, found ") + v.type_name(),
                    v.line);
}

double config_number(const ConfigValue& table, std::string_view key,
                     const Constants& c, std::optional<double> fallback) {
  if (const auto* v = table.find(key)) return config_number(*v, c);
  if (fallback) return *fallback;
  throw ConfigError("missing key '" + std::string(key) + "'", table.line);
}

StieltjesMeasure load_measure(const ConfigValue& v, const Constants& c) {
  if (is_zero_value(v)) return {};
  if (!v.is_table())
    throw ConfigError("a measure is 0 or { atoms = [...], density = \"...\" }",
                      v.line);
  std::vector<Atom> atoms;
  if (const auto* a = v.find("atoms")) {
    if (!a->is_array()) throw ConfigError("atoms must be an array", a->line);
    for (const auto& x : a->items) {
      if (x.is_table()) {
        atoms.push_back({config_number(x, "t", c), config_number(x, "w", c)});
      } else if (x.is_array() && x.items.size() == 2) {
        atoms.push_back(
            {config_number(x.items[0], c), config_number(x.items[1], c)});
      } else {
        throw ConfigError("an atom is { t, w } or [t, w]", x.line);
      }
    }
  }
  std::optional<Density> density;
  if (const auto* d = v.find("density")) {
    Density dd;
    dd.fn = univariate(*d, c);
    if (const auto* b = v.find("density_breaks"))
      dd.breakpoints = number_list(*b, c);
    density = dd;
  }
  try {
    return StieltjesMeasure(std::move(atoms), std::move(density));
  } catch (const Error& e) {
    throw ConfigError(e.what(), v.line);
  }
}

Settings load_settings(const ConfigValue* t, Settings s) {
  if (!t) return s;
  if (!t->is_table()) throw ConfigError("settings must be a table", t->line);
  const Constants c;
  auto count = [&](const char* key, int& field) {
    if (const auto* v = t->find(key)) {
      const double x = config_number(*v, c);
      if (!(x >= 1.0) || x != std::floor(x))
        throw ConfigError(std::string(key) + " must be a positive integer",
                          v->line);
      field = static_cast<int>(x);
    }
  };
  count("panels", s.panels);
  count("nodes_per_panel", s.nodes_per_panel);
  count("grid_n", s.grid_n);
  count("box_grid", s.box_grid);
  count("bound_grid", s.bound_grid);
  if (const auto* v = t->find("tol")) {
    s.tol = config_number(*v, c);
    if (!(s.tol > 0.0)) throw ConfigError("tol must be positive", v->line);
  }
  return s;
}

std::vector<CheckSpec> load_checks(const ConfigValue& root, bool system,
                                   const Constants& c) {
  std::vector<CheckSpec> out;
  const auto* arr = root.find("check");
  if (!arr) return out;
  if (!arr->is_array())
    throw ConfigError("checks are written as [[check]] sections", arr->line);
  for (const auto& t : arr->items) {
    if (!t.is_table()) throw ConfigError("a check must be a table", t.line);
    CheckSpec cs;
    cs.line = t.line;
    const std::string kind = string_at(t, "kind");
    if (kind == "index1") cs.kind = IndexKind::I1;
    else if (kind == "index0") cs.kind = IndexKind::I0;
    else if (kind == "index0_diamond") cs.kind = IndexKind::I0Diamond;
    else
      throw ConfigError("kind must be index1, index0 or index0_diamond",
                        t.at("kind").line);
    const auto& rv = t.at("rho");
    if (system) {
      auto r = number_list(rv, c);
      if (r.size() != 2)
        throw ConfigError("a system check needs rho = [rho1, rho2]", rv.line);
      cs.rho = {r[0], r[1]};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int l = 0; l < 2; ++l) {
            const std::string key = "alpha_" + std::to_string(i + 1) +
                                    std::to_string(j + 1) +
                                    std::to_string(l + 1);
            if (const auto* m = t.find(key))
              cs.grid.at(i, j, l) = load_measure(*m, c);
          }
      if (t.has("alpha"))
        throw ConfigError("system checks take alpha_ijl measures", t.line);
      cs.certify = static_cast<int>(config_number(t, "certify", c, 1.0)) - 1;
      if (cs.certify != 0 && cs.certify != 1)
        throw ConfigError("certify must be 1 or 2", t.line);
    } else {
      cs.rho = {config_number(rv, c), 0.0};
      if (cs.kind == IndexKind::I0Diamond)
        throw ConfigError("index0_diamond applies to systems only", t.line);
      if (const auto* m = t.find("alpha")) cs.alpha = load_measure(*m, c);
    }
    out.push_back(std::move(cs));
  }
  return out;
}

ModelConfig load_model(const ConfigValue& root, const Constants& overrides) {
  ModelConfig m;
  m.constants = load_constants(root, overrides);
  m.name = root.has("name") ? string_at(root, "name") : "model";
  m.settings = load_settings(root.find("settings"));
  const int kinds = root.has("problem") + root.has("system") +
                    root.has("elliptic");
  if (kinds != 1)
    throw ConfigError(
        "a config describes exactly one of [problem], [system], [elliptic]",
        root.line);
  if (root.has("problem")) {
    m.kind = ModelKind::Single;
    m.problem = load_single(root, m.constants, m.name);
  } else if (root.has("system")) {
    m.kind = ModelKind::System;
    m.system = load_system(root, m.constants, m.name);
  } else {
    m.kind = ModelKind::Elliptic;
    auto [tr, src] = load_elliptic(root, m.constants, m.name);
    m.system = tr.system;
    m.elliptic = std::move(tr);
    m.elliptic_source = std::move(src);
  }
  m.checks = load_checks(root, m.is_system(), m.constants);
  m.solve = load_solve(root.find("solve"), m.constants);
  m.nonexist = load_nonexist(root.find("nonexist"), m.constants);
  return m;
}

ModelConfig load_model_text(const std::string& text, const Constants& overrides) {
  return load_model(parse_config(text), overrides);
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string emit_functional(const Functional& H) {
  if (H.is_zero()) return "0";
  std::string u, v;
  for (const auto& p : H.points) {
    auto& dst = p.component == 0 ? u : v;
    if (!dst.empty()) dst += ", ";
    dst += full(p.t);
  }
  std::string out = "{ u_points = [" + u + "]";
  if (!v.empty()) out += ", v_points = [" + v + "]";
  return out + ", h = " + quote(H.text) + " }";
}

std::string emit_measure(const StieltjesMeasure& m) {
  if (m.is_zero()) return "0";
  if (!m.atoms_only())
    throw SpecificationError("measures with a density cannot be re-emitted");
  std::string out = "{ atoms = [";
  bool first = true;
  for (const auto& a : m.atoms()) {
    if (!first) out += ", ";
    first = false;
    out += "[" + full(a.t) + ", " + full(a.w) + "]";
  }
  return out + "] }";
}

}  // namespace

std::string emit_system_config(const ModelConfig& m) {
  if (m.kind != ModelKind::Elliptic || !m.elliptic || !m.elliptic_source)
    throw SpecificationError("transform needs an [elliptic] model");
  const auto& tr = *m.elliptic;
  const auto& src = *m.elliptic_source;
  const auto& map = tr.map;
  std::string r_expr, phi_expr;
  if (map.n == 2) {
    r_expr = full(map.R0) + "^(1-t)*" + full(map.R1) + "^t";
    const double l = std::log(map.R0 / map.R1);
    phi_expr = "(" + r_expr + ")^2*" + full(l * l);
  } else {
    const double p = map.n - 2;
    const double A = std::pow(map.R0, -p), B = std::pow(map.R1, -p);
    const std::string base = "(" + full(A) + "+" + full(B - A) + "*t)";
    r_expr = base + "^(" + full(-1.0 / p) + ")";
    const double q = (B - A) / p;
    phi_expr = full(q * q) + "*" + base + "^(" + full(-2.0 * (map.n - 1) / p) +
               ")";
  }
  std::ostringstream o;
  o << "# radial annulus system on [0,1], t = 0 at r = R0\n";
  o << "name = " << quote(m.name) << "\n\n";
  bool params = false;
  for (const auto& [k, v] : m.constants) {
    if (k == "inf") continue;
    if (!params) o << "[params]\n";
    params = true;
    o << k << " = " << full(v) << "\n";
  }
  if (params) o << "\n";
  o << "[settings]\n"
    << "panels = " << m.settings.panels << "\n"
    << "nodes_per_panel = " << m.settings.nodes_per_panel << "\n"
    << "grid_n = " << m.settings.grid_n << "\n"
    << "box_grid = " << m.settings.box_grid << "\n"
    << "bound_grid = " << m.settings.bound_grid << "\n"
    << "tol = " << full(m.settings.tol) << "\n\n";
  const auto& ep = src.problem;
  for (int i = 0; i < 2; ++i) {
    const auto& eq = tr.system.eq[i];
    o << "[system.eq" << i + 1 << "]\n";
    if (i == 0)
      o << "kernel = { builtin = \"multipoint_k1\", beta1 = " << full(ep.beta1)
        << ", eta = " << full(tr.eta);
    else
      o << "kernel = { builtin = \"derivative_k2\", beta2 = " << full(tr.beta2)
        << ", xi = " << full(tr.xi);
    o << ", a = " << full(eq.kernel.ab.lo) << ", b = " << full(eq.kernel.ab.hi)
      << " }\n";
    o << "g = " << quote("(" + phi_expr + ")*(" +
                         substitute(src.g[i], "r", r_expr) + ")")
      << "\n";
    if (!eq.g_breaks.empty()) {
      o << "g_breaks = [";
      for (std::size_t k = 0; k < eq.g_breaks.size(); ++k)
        o << (k ? ", " : "") << full(eq.g_breaks[k]);
      o << "]\n";
    }
    o << "f = " << quote(substitute(src.f[i], "r", r_expr)) << "\n";
    o << "H1 = " << emit_functional(eq.H[0]) << "\n";
    o << "H2 = " << emit_functional(eq.H[1]) << "\n";
    if (tr.system.c_override[i])
      o << "c_override = " << full(*tr.system.c_override[i]) << "\n";
    o << "\n";
  }
  for (const auto& cs : m.checks) {
    o << "[[check]]\n";
    o << "kind = \""
      << (cs.kind == IndexKind::I1   ? "index1"
          : cs.kind == IndexKind::I0 ? "index0"
                                     : "index0_diamond")
      << "\"\n";
    o << "rho = [" << full(cs.rho[0]) << ", " << full(cs.rho[1]) << "]\n";
    if (cs.kind == IndexKind::I0Diamond) o << "certify = " << cs.certify + 1 << "\n";
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int l = 0; l < 2; ++l)
          if (!cs.grid.at(i, j, l).is_zero())
            o << "alpha_" << i + 1 << j + 1 << l + 1 << " = "
              << emit_measure(cs.grid.at(i, j, l)) << "\n";
    o << "\n";
  }
  if (m.solve.present) {
    const auto& st = m.solve.settings;
    o << "[solve]\n"
      << "u0 = " << full(m.solve.u0) << "\n"
      << "v0 = " << full(m.solve.v0) << "\n"
      << "nodes = " << st.nodes << "\n"
      << "damping = " << full(st.damping) << "\n"
      << "tol = " << full(st.tol) << "\n"
      << "max_iter = " << st.max_iter << "\n";
  }
  return o.str();
}

}  // namespace hammer
