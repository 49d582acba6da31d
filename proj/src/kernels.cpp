#include "hammerstein/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hammer {

namespace {

double get(const ParamMap& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end())
    throw SpecificationError("builtin kernel parameter '" + key +
                             "' is missing");
  return it->second;
}

double get_or(const ParamMap& p, const std::string& key, double fallback) {
  auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void only_keys(const ParamMap& p, std::string_view kernel,
               std::initializer_list<const char*> keys) {
  for (const auto& [k, v] : p) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known)
      throw SpecificationError("unknown parameter '" + k + "' for kernel '" +
                               std::string(kernel) + "'");
  }
}

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

std::vector<double> inside(std::initializer_list<double> xs) {
  std::vector<double> out;
  for (double x : xs)
    if (x > 0.0 && x < 1.0) out.push_back(x);
  return out;
}

KernelBundle reactor(const ParamMap& p) {
  only_keys(p, "reactor", {"lambda"});
  const double lambda = get(p, "lambda");
  require(lambda > 0.0, "reactor kernel needs lambda > 0");
  KernelBundle b;
  auto& k = b.kernel;
  k.name = "reactor";
  k.k = [lambda](double t, double s) {
    return s > t ? std::exp(lambda * (t - s)) : 1.0;
  };
  k.phi = [](double) { return 1.0; };
  k.c1 = std::exp(-lambda);
  k.sign_class = SignClass::StronglyPositive;
  k.s_breaks = [](double t) { return inside({t}); };
  GammaSpec g;
  g.gamma = [lambda](double t) { return std::exp(lambda * (t - 1.0)) / lambda; };
  g.c2 = std::exp(-lambda);
  g.analytic_norm = 1.0 / lambda;
  b.gammas.push_back(g);
  b.c = std::min(k.c1, g.c2);
  return b;
}

KernelBundle cantilever(const ParamMap& p) {
  only_keys(p, "cantilever", {"a", "b"});
  const double a = get(p, "a"), bb = get(p, "b");
  require(a > 0.0 && a < bb && bb <= 1.0,
          "cantilever kernel needs 0 < a < b <= 1");
  KernelBundle b;
  auto& k = b.kernel;
  k.name = "cantilever";
  k.k = [](double t, double s) {
    return s >= t ? (3.0 * t * t * s - t * t * t) / 6.0
                  : (3.0 * s * s * t - s * s * s) / 6.0;
  };
  k.phi = [](double s) { return 0.5 * s * s - s * s * s / 6.0; };
  k.ab = {a, bb};
  k.c1 = 0.5 * a * a * (3.0 - a);
  k.sign_class = SignClass::NonNegative;
  k.s_breaks = [](double t) { return inside({t}); };
  GammaSpec g;
  g.gamma = [](double t) { return (3.0 * t * t - t * t * t) / 6.0; };
  g.c2 = 0.5 * a * a * (3.0 - a);
  g.ab = {a, bb};
  g.analytic_norm = 1.0 / 3.0;
  b.gammas.push_back(g);
  b.c = std::min(k.c1, g.c2);
  return b;
}

KernelBundle thermostat(const ParamMap& p) {
  only_keys(p, "thermostat", {"beta", "eta", "a", "b"});
  const double beta = get(p, "beta"), eta = get(p, "eta");
  const double a = get(p, "a"), bb = get(p, "b");
  require(beta > 0.0, "thermostat kernel needs beta > 0");
  require(eta >= 0.0 && eta <= 1.0, "thermostat kernel needs eta in [0,1]");
  require(beta + eta < 1.0, "thermostat kernel needs beta + eta < 1");
  require(0.0 <= a && a < bb && bb < beta + eta,
          "thermostat kernel needs 0 <= a < b < beta + eta");
  const double phi = beta + eta >= 0.5 ? beta + eta : 1.0 - (beta + eta);
  KernelBundle b;
  auto& k = b.kernel;
  k.name = "thermostat";
  k.k = [beta, eta](double t, double s) {
    double v = beta;
    if (s <= eta) v += eta - s;
    if (s <= t) v -= t - s;
    return v;
  };
  k.phi = [phi](double) { return phi; };
  k.ab = {a, bb};
  k.c1 = (bb <= eta ? beta : beta + eta - bb) / phi;
  k.sign_class = SignClass::SignChanging;
  k.s_breaks = [beta, eta](double t) { return inside({eta, t, t - beta}); };
  GammaSpec g;
  g.gamma = [beta, eta](double t) { return beta + eta - t; };
  g.c2 = (beta + eta - bb) / phi;
  g.ab = {a, bb};
  g.analytic_norm = phi;
  b.gammas.push_back(g);
  b.c = std::min(k.c1, g.c2);
  return b;
}

KernelBundle multipoint_k1(const ParamMap& p) {
  only_keys(p, "multipoint_k1", {"beta1", "eta", "a", "b"});
  const double beta1 = get(p, "beta1"), eta = get(p, "eta");
  const double a = get_or(p, "a", 0.0);
  // b within rounding of eta (as produced by radial transforms) is eta
  double bb = get_or(p, "b", eta);
  if (bb > eta && bb <= eta + 1e-12) bb = eta;
  require(beta1 < 0.0, "multipoint_k1 needs beta1 < 0");
  require(eta > 0.0 && eta < 1.0, "multipoint_k1 needs eta in (0,1)");
  require(0.0 <= a && a < bb && bb <= eta,
          "multipoint_k1 needs [a,b] inside [0,eta]");
  KernelBundle b;
  auto& k = b.kernel;
  k.name = "multipoint_k1";
  k.k = [beta1, eta](double t, double s) {
    double v = (1.0 - s) / (1.0 - beta1);
    if (s <= eta) v -= beta1 / (1.0 - beta1) * (eta - s);
    if (s <= t) v -= t - s;
    return v;
  };
  k.phi = [](double s) { return 1.0 - s; };
  k.ab = {a, bb};
  k.c1 = (1.0 - eta) / (1.0 - beta1);
  k.sign_class = SignClass::SignChanging;
  // sign change of k on eta < s <= t
  k.s_breaks = [beta1, eta](double t) {
    return inside({eta, t, ((1.0 - beta1) * t - 1.0) / (-beta1)});
  };
  const double n11 = (1.0 - beta1 * eta) / (1.0 - beta1);
  GammaSpec g11;
  g11.gamma = [n11](double t) { return n11 - t; };
  g11.c2 = (1.0 - eta) / (1.0 - beta1 * eta);
  g11.ab = {a, bb};
  g11.analytic_norm = n11;
  GammaSpec g12;
  g12.gamma = [beta1](double) { return 1.0 / (1.0 - beta1); };
  g12.c2 = 1.0;
  g12.ab = {a, bb};
  g12.analytic_norm = 1.0 / (1.0 - beta1);
  b.gammas = {g11, g12};
  b.c = std::min({k.c1, g11.c2, g12.c2});
  return b;
}

KernelBundle derivative_k2(const ParamMap& p) {
  only_keys(p, "derivative_k2", {"beta2", "xi", "a", "b"});
  const double beta2 = get(p, "beta2"), xi = get(p, "xi");
  const double a = get_or(p, "a", 0.0);
  // b within rounding of xi (as produced by radial transforms) is xi
  double bb = get_or(p, "b", xi);
  if (bb > xi && bb <= xi + 1e-12) bb = xi;
  require(xi > 0.0 && xi < 1.0, "derivative_k2 needs xi in (0,1)");
  require(beta2 > 0.0 && beta2 < 1.0 - xi,
          "derivative_k2 needs 0 < beta2 < 1 - xi");
  require(0.0 <= a && a < bb && bb <= xi,
          "derivative_k2 needs [a,b] inside [0,xi]");
  KernelBundle b;
  auto& k = b.kernel;
  k.name = "derivative_k2";
  k.k = [beta2, xi](double t, double s) {
    double v = 1.0 - s;
    if (s <= xi) v -= beta2;
    if (s <= t) v -= t - s;
    return v;
  };
  k.phi = [](double s) { return 1.0 - s; };
  k.ab = {a, bb};
  k.c1 = 1.0 - beta2 - xi;
  k.sign_class = SignClass::SignChanging;
  k.s_breaks = [xi](double t) { return inside({xi, t}); };
  GammaSpec g21;
  g21.gamma = [beta2](double t) { return 1.0 - beta2 - t; };
  g21.c2 = (1.0 - beta2 - xi) / (1.0 - beta2);
  g21.ab = {a, bb};
  g21.analytic_norm = 1.0 - beta2;
  GammaSpec g22;
  g22.gamma = [](double) { return 1.0; };
  g22.c2 = 1.0;
  g22.ab = {a, bb};
  g22.analytic_norm = 1.0;
  b.gammas = {g21, g22};
  b.c = std::min({k.c1, g21.c2, g22.c2});
  return b;
}

// Sample points on [0,1]: a uniform grid plus points just either side of
// each breakpoint, so that one-sided limits at jumps are both seen.
std::vector<double> sample_points(int n, const std::vector<double>& breaks) {
  std::vector<double> xs;
  xs.reserve(n + 3 * breaks.size());
  for (int i = 0; i < n; ++i) xs.push_back(static_cast<double>(i) / (n - 1));
  for (double b : breaks) {
    for (double x : {b - 1e-9, b, b + 1e-9})
      if (x >= 0.0 && x <= 1.0) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

const char* to_string(SignClass c) {
  switch (c) {
    case SignClass::StronglyPositive:
      return "strongly_positive";
    case SignClass::NonNegative:
      return "non_negative";
    case SignClass::SignChanging:
      return "sign_changing";
  }
  return "sign_changing";
}

SignClass parse_sign_class(std::string_view name) {
  if (name == "strongly_positive") return SignClass::StronglyPositive;
  if (name == "non_negative") return SignClass::NonNegative;
  if (name == "sign_changing") return SignClass::SignChanging;
  throw SpecificationError("unknown kernel class '" + std::string(name) +
                           "' (expected strongly_positive, non_negative or "
                           "sign_changing)");
}

std::vector<double> KernelSpec::s_breakpoints(double t) const {
  return s_breaks ? s_breaks(t) : std::vector<double>{};
}

std::vector<double> KernelSpec::t_breakpoints(double s) const {
  if (t_breaks) return t_breaks(s);
  if (s > 0.0 && s < 1.0) return {s};
  return {};
}

void KernelSpec::validate() const {
  if (!k) throw SpecificationError("kernel '" + name + "' has no formula");
  if (!phi) throw SpecificationError("kernel '" + name + "' has no envelope");
  if (!(ab.lo >= 0.0 && ab.lo <= ab.hi && ab.hi <= 1.0))
    throw DomainError("kernel interval [a,b] must lie in [0,1]");
  if (!(c1 > 0.0 && c1 <= 1.0))
    throw DomainError("kernel constant c1 must lie in (0,1]");
  if (sign_class == SignClass::StronglyPositive &&
      (ab.lo != 0.0 || ab.hi != 1.0))
    throw SpecificationError(
        "a strongly positive kernel uses [a,b] = [0,1]");
}

double GammaSpec::sampled_norm(int grid_n) const {
  auto r = sup_inf_over_t([this](double t) { return std::abs(gamma(t)); }, 0.0,
                          1.0, Extremum::Sup, grid_n, breakpoints);
  return r.value;
}

double GammaSpec::norm(int grid_n) const {
  return analytic_norm ? *analytic_norm : sampled_norm(grid_n);
}

KernelBundle builtin(std::string_view name, const ParamMap& params) {
  if (name == "reactor") return reactor(params);
  if (name == "cantilever") return cantilever(params);
  if (name == "thermostat") return thermostat(params);
  if (name == "multipoint_k1") return multipoint_k1(params);
  if (name == "derivative_k2") return derivative_k2(params);
  throw SpecificationError("unknown builtin kernel '" + std::string(name) + "'");
}

std::vector<std::string> builtin_names() {
  return {"reactor", "cantilever", "thermostat", "multipoint_k1",
          "derivative_k2"};
}

ConditionReport verify_bounds(const KernelSpec& kernel, int grid_n,
                              double tol) {
  if (grid_n < 16) throw DomainError("verify_bounds needs grid_n >= 16");
  ConditionReport rep("kernel_bounds");
  rep.note("kernel", kernel.name);
  rep.note("class", to_string(kernel.sign_class));
  rep.set("grid_n", grid_n);
  rep.set("c1", kernel.c1);
  rep.set("a", kernel.ab.lo);
  rep.set("b", kernel.ab.hi);

  std::vector<double> ts = sample_points(grid_n, {kernel.ab.lo, kernel.ab.hi});
  double upper = INFINITY, lower = INFINITY;
  double upper_t = 0, upper_s = 0, lower_t = 0, lower_s = 0;
  for (double t : ts) {
    const bool in_ab = kernel.ab.contains(t);
    const auto ss = sample_points(grid_n, kernel.s_breakpoints(t));
    for (double s : ss) {
      const double kv = kernel.k(t, s);
      const double ph = kernel.phi(s);
      double up = 0.0, lo = INFINITY;
      switch (kernel.sign_class) {
        case SignClass::StronglyPositive:
          up = ph - kv;
          lo = kv - kernel.c1 * ph;
          break;
        case SignClass::NonNegative:
          up = ph - kv;
          lo = in_ab ? std::min(kv, kv - kernel.c1 * ph) : kv;
          break;
        case SignClass::SignChanging:
          up = ph - std::abs(kv);
          if (in_ab) lo = kv - kernel.c1 * ph;
          break;
      }
      if (up < upper) upper = up, upper_t = t, upper_s = s;
      if (lo < lower) lower = lo, lower_t = t, lower_s = s;
    }
  }
  if (!std::isfinite(lower)) lower = 0.0;
  rep.set("upper_margin", upper);
  rep.set("upper_worst_t", upper_t);
  rep.set("upper_worst_s", upper_s);
  rep.set("lower_margin", lower);
  rep.set("lower_worst_t", lower_t);
  rep.set("lower_worst_s", lower_s);
  const double margin = std::min(upper, lower);
  rep.set("margin", margin);
  rep.set("tol", tol);
  rep.set_verdict(margin >= -tol ? Verdict::Pass : Verdict::Fail);
  return rep;
}

ConditionReport verify_gamma(const GammaSpec& gamma, int grid_n, double tol) {
  ConditionReport rep("gamma_bounds");
  const double sampled = gamma.sampled_norm(grid_n);
  const double norm = gamma.norm(grid_n);
  rep.set("norm", norm);
  rep.set("sampled_norm", sampled);
  rep.set("c2", gamma.c2);
  auto lo = sup_inf_over_t(gamma.gamma, gamma.ab.lo, gamma.ab.hi,
                           Extremum::Inf, grid_n, gamma.breakpoints);
  rep.set("min_on_ab", lo.value);
  rep.set("argmin_on_ab", lo.location);
  const double margin_lower = lo.value - gamma.c2 * norm;
  const double margin_norm = -std::abs(norm - sampled);
  rep.set("lower_margin", margin_lower);
  rep.set("norm_mismatch", -margin_norm);
  const bool ok = margin_lower >= -tol && margin_norm >= -1e-8 * (1 + norm);
  rep.set_verdict(ok ? Verdict::Pass : Verdict::Fail);
  return rep;
}

KernelSection transformed_kernel(const KernelSpec& kernel,
                                 const StieltjesMeasure& measure,
                                 const QuadratureRule& rule) {
  KernelSection out;
  std::set<double> br;
  for (const auto& a : measure.atoms())
    for (double b : kernel.s_breakpoints(a.t)) br.insert(b);
  if (measure.density()) {
    // the s-kinks move with t, so only the fixed ones are known
    for (double b : kernel.s_breakpoints(0.0)) br.insert(b);
    for (double b : kernel.s_breakpoints(1.0)) br.insert(b);
  }
  out.breakpoints.assign(br.begin(), br.end());
  if (measure.is_zero()) {
    out.fn = [](double) { return 0.0; };
    return out;
  }
  std::vector<Atom> atoms;
  for (const auto& a : measure.atoms())
    if (a.w != 0.0) atoms.push_back(a);
  auto density = measure.density();
  KernelFn k = kernel.k;
  auto t_breaks = [kernel](double s) { return kernel.t_breakpoints(s); };
  out.fn = [atoms, density, k, t_breaks, rule](double s) {
    double total = 0.0;
    for (const auto& a : atoms) total += a.w * k(a.t, s);
    if (density) {
      auto tb = t_breaks(s);
      tb.insert(tb.end(), density->breakpoints.begin(),
                density->breakpoints.end());
      total += integrate(
          rule, [&](double t) { return k(t, s) * density->fn(t); }, 0.0, 1.0,
          tb);
    }
    return total;
  };
  return out;
}

}  // namespace hammer
