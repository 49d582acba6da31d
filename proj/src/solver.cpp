#include "hammerstein/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hammer {

namespace {

std::vector<double> uniform_grid(int n) {
  if (n < 2) throw DomainError("solver grid needs at least two nodes");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = static_cast<double>(i) / (n - 1);
  return g;
}

double sup_diff(const SolutionProfile& a, const SolutionProfile& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.u.size(); ++i)
    d = std::max(d, std::abs(a.u[i] - b.u[i]));
  for (std::size_t i = 0; i < a.v.size(); ++i)
    d = std::max(d, std::abs(a.v[i] - b.v[i]));
  return d;
}

bool finite(const SolutionProfile& a) {
  for (double x : a.u)
    if (!std::isfinite(x)) return false;
  for (double x : a.v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

double SolutionProfile::at(double t, int component) const {
  const auto& vals = component == 0 ? u : v;
  if (vals.empty()) throw DomainError("profile has no such component");
  const std::size_t n = grid.size();
  if (t <= grid.front()) return vals.front();
  if (t >= grid.back()) return vals.back();
  auto it = std::upper_bound(grid.begin(), grid.end(), t);
  const std::size_t j = std::min<std::size_t>(it - grid.begin(), n - 1);
  const double t0 = grid[j - 1], t1 = grid[j];
  const double r = (t - t0) / (t1 - t0);
  return (1.0 - r) * vals[j - 1] + r * vals[j];
}

RealFn SolutionProfile::interpolant(int component) const {
  return [this, component](double t) { return at(t, component); };
}

SolutionProfile SolutionProfile::constant(int nodes, double u0, bool system,
                                          double v0) {
  SolutionProfile p;
  p.grid = uniform_grid(nodes);
  p.u.assign(nodes, u0);
  if (system) p.v.assign(nodes, v0);
  return p;
}

NystromOperator::NystromOperator(const Problem& p, int nodes,
                                 int nodes_per_panel)
    : grid_(uniform_grid(nodes)), system_(false) {
  p.validate();
  Equation e;
  e.H = {p.H};
  e.f = p.f;
  build(e, p.kernel, p.g, p.g_breaks, {&p.gamma}, nodes_per_panel);
  eqs_.push_back(std::move(e));
}

NystromOperator::NystromOperator(const SystemSpec& s, int nodes,
                                 int nodes_per_panel)
    : grid_(uniform_grid(nodes)), system_(true) {
  s.validate();
  for (const auto& q : s.eq) {
    Equation e;
    e.H = {q.H[0], q.H[1]};
    e.f = q.f;
    build(e, q.kernel, q.g, q.g_breaks, {&q.gammas[0], &q.gammas[1]},
          nodes_per_panel);
    eqs_.push_back(std::move(e));
  }
}

void NystromOperator::build(Equation& e, const KernelSpec& k, const RealFn& g,
                            const std::vector<double>& g_breaks,
                            const std::vector<const GammaSpec*>& gammas,
                            int nodes_per_panel) {
  const int n = nodes();
  std::set<double> br(g_breaks.begin(), g_breaks.end());
  for (double t : grid_)
    for (double b : k.s_breakpoints(t)) br.insert(b);
  QuadratureRule rule(n - 1, nodes_per_panel,
                      std::vector<double>(br.begin(), br.end()));
  const auto qn = quadrature_nodes(rule, 0.0, 1.0);
  const std::size_t Q = qn.size();
  e.sq.resize(Q);
  e.cell.resize(Q);
  e.frac.resize(Q);
  std::vector<double> gw(Q);
  for (std::size_t q = 0; q < Q; ++q) {
    const double s = qn[q].x;
    e.sq[q] = s;
    int j = std::min(static_cast<int>(s * (n - 1)), n - 2);
    e.cell[q] = j;
    e.frac[q] = (s - grid_[j]) / (grid_[j + 1] - grid_[j]);
    gw[q] = g(s) * qn[q].w;
  }
  e.weights.resize(static_cast<std::size_t>(n) * Q);
  for (int i = 0; i < n; ++i)
    for (std::size_t q = 0; q < Q; ++q)
      e.weights[i * Q + q] = k.k(grid_[i], e.sq[q]) * gw[q];
  for (const auto* gm : gammas) {
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = gm->gamma(grid_[i]);
    e.gamma_at.push_back(std::move(vals));
  }
}

void NystromOperator::apply_equation(const Equation& e,
                                     const SolutionProfile& x,
                                     std::vector<double>& out) const {
  const int n = nodes();
  const std::size_t Q = e.sq.size();
  std::vector<double> fq(Q);
  for (std::size_t q = 0; q < Q; ++q) {
    const int j = e.cell[q];
    const double r = e.frac[q];
    const double uq = (1.0 - r) * x.u[j] + r * x.u[j + 1];
    const double vq = system_ ? (1.0 - r) * x.v[j] + r * x.v[j + 1] : 0.0;
    const double fv = e.f(e.sq[q], uq, vq);
    if (std::isinf(fv))
      throw DivergenceError("nonlinearity overflows at s=" +
                                format_number(e.sq[q]),
                            0);
    if (!std::isfinite(fv))
      throw DomainError("nonlinearity is undefined at quadrature node s=" +
                        format_number(e.sq[q]) + " (u=" + format_number(uq) +
                        (system_ ? ", v=" + format_number(vq) : "") + ")");
    fq[q] = fv;
  }
  const RealFn ui = x.interpolant(0);
  const RealFn vi = system_ ? x.interpolant(1) : RealFn{};
  std::vector<double> hv(e.H.size());
  for (std::size_t j = 0; j < e.H.size(); ++j) {
    hv[j] = e.H[j].evaluate(ui, vi);
    if (!std::isfinite(hv[j]))
      throw DomainError("boundary functional is undefined at the current "
                        "iterate");
  }
  out.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    const double* w = &e.weights[i * Q];
    for (std::size_t q = 0; q < Q; ++q) acc += w[q] * fq[q];
    for (std::size_t j = 0; j < e.H.size(); ++j) acc += e.gamma_at[j][i] * hv[j];
    out[i] = acc;
  }
}

SolutionProfile NystromOperator::apply(const SolutionProfile& x) const {
  if (x.grid.size() != grid_.size())
    throw DomainError("profile is not defined on the solver grid");
  if (system_ && x.v.size() != grid_.size())
    throw DomainError("system profile needs both components");
  SolutionProfile out;
  out.grid = grid_;
  apply_equation(eqs_[0], x, out.u);
  if (system_) apply_equation(eqs_[1], x, out.v);
  return out;
}

SolutionProfile apply_T(const Problem& p, const SolutionProfile& x,
                        int nodes_per_panel) {
  NystromOperator op(p, static_cast<int>(x.grid.size()), nodes_per_panel);
  return op.apply(x);
}

SolutionProfile apply_T(const SystemSpec& s, const SolutionProfile& x,
                        int nodes_per_panel) {
  NystromOperator op(s, static_cast<int>(x.grid.size()), nodes_per_panel);
  return op.apply(x);
}

SolutionProfile solve(const NystromOperator& op, const SolutionProfile& x0,
                      const SolverSettings& st) {
  if (!(st.tol > 0.0)) throw DomainError("solver tolerance must be positive");
  if (!(st.damping > 0.0 && st.damping <= 1.0))
    throw DomainError("damping must lie in (0,1]");
  SolutionProfile x = x0;
  if (x.grid.size() != op.grid().size())
    throw DomainError("initial profile is not defined on the solver grid");
  double damping = st.damping;
  double best_step = INFINITY;
  int stall = 0;
  int it = 0;
  bool converged = false;
  for (; it < st.max_iter; ++it) {
    SolutionProfile tx;
    try {
      tx = op.apply(x);
    } catch (const DivergenceError& e) {
      throw DivergenceError(e.what(), it + 1);
    }
    if (sup_diff(tx, x) < st.tol) {
      converged = true;
      break;
    }
    SolutionProfile next = x;
    for (std::size_t i = 0; i < x.u.size(); ++i)
      next.u[i] = (1.0 - damping) * x.u[i] + damping * tx.u[i];
    for (std::size_t i = 0; i < x.v.size(); ++i)
      next.v[i] = (1.0 - damping) * x.v[i] + damping * tx.v[i];
    if (!finite(next))
      throw DivergenceError("iterate " + std::to_string(it + 1) +
                                " is not finite",
                            it + 1);
    const double step = sup_diff(next, x);
    x = std::move(next);
    if (st.adaptive) {
      if (step < best_step * (1.0 - 1e-3)) {
        best_step = step;
        stall = 0;
      } else if (++stall >= 25 && damping > 1.0 / 64.0) {
        damping *= 0.5;
        best_step = INFINITY;
        stall = 0;
      }
    }
  }
  const auto tx = op.apply(x);
  x.residual = sup_diff(x, tx);
  x.iterations = it;
  x.converged = converged || x.residual < st.tol;
  x.damping = damping;
  return x;
}

SolutionProfile solve(const Problem& p, const SolutionProfile& u0,
                      const SolverSettings& st) {
  NystromOperator op(p, static_cast<int>(u0.grid.size()), st.nodes_per_panel);
  return solve(op, u0, st);
}

SolutionProfile solve(const SystemSpec& s, const SolutionProfile& x0,
                      const SolverSettings& st) {
  NystromOperator op(s, static_cast<int>(x0.grid.size()), st.nodes_per_panel);
  return solve(op, x0, st);
}

std::vector<bool> localization_check(const SolutionProfile& sol,
                                     std::span<const LocalizationWindow> windows,
                                     double tol) {
  std::vector<bool> flags;
  for (const auto& w : windows) {
    if (!(w.t_range.lo >= 0.0 && w.t_range.hi <= 1.0 &&
          w.t_range.lo <= w.t_range.hi))
      throw DomainError("localization window must lie in [0,1]");
    const auto& vals = w.component == 0 ? sol.u : sol.v;
    if (vals.empty()) {
      flags.push_back(false);
      continue;
    }
    // extremes of a piecewise-linear interpolant sit at nodes or ends
    double lo = std::min(sol.at(w.t_range.lo, w.component),
                         sol.at(w.t_range.hi, w.component));
    double hi = std::max(sol.at(w.t_range.lo, w.component),
                         sol.at(w.t_range.hi, w.component));
    for (std::size_t i = 0; i < sol.grid.size(); ++i)
      if (sol.grid[i] >= w.t_range.lo && sol.grid[i] <= w.t_range.hi) {
        lo = std::min(lo, vals[i]);
        hi = std::max(hi, vals[i]);
      }
    flags.push_back(lo >= w.lower - tol && hi <= w.upper + tol);
  }
  return flags;
}

}  // namespace hammer
