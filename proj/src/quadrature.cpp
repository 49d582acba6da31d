#include "hammerstein/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

namespace hammer {

namespace {

std::vector<QuadratureNode> compute_gauss_legendre(int n) {
  std::vector<QuadratureNode> nodes(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    nodes[n - 1 - i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  return nodes;
}

// Sign-aware comparison so that sup and inf share one code path.
bool better(double a, double b, Extremum mode) {
  return mode == Extremum::Sup ? a > b : a < b;
}

}  // namespace

const std::vector<QuadratureNode>& gauss_legendre(int n) {
  if (n < 1 || n > 64)
    throw DomainError("Gauss-Legendre order must be in [1,64], got " +
                      std::to_string(n));
  static std::mutex mutex;
  static std::map<int, std::vector<QuadratureNode>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    if (n == 1) {
      it = cache.emplace(n, std::vector<QuadratureNode>{{0.0, 2.0}}).first;
    } else {
      it = cache.emplace(n, compute_gauss_legendre(n)).first;
    }
  }
  return it->second;
}

void QuadratureRule::validate() const {
  if (panels < 1) throw DomainError("quadrature needs at least one panel");
  if (nodes_per_panel < 1 || nodes_per_panel > 64)
    throw DomainError("nodes per panel must be in [1,64]");
  for (double b : breakpoints)
    if (!(b >= 0.0 && b <= 1.0))
      throw DomainError("quadrature breakpoint outside [0,1]");
}

std::vector<double> cell_edges(const QuadratureRule& rule, double lo, double hi,
                               std::span<const double> extra) {
  if (!(lo <= hi))
    throw DomainError("integration bounds reversed: lo=" + std::to_string(lo) +
                      " hi=" + std::to_string(hi));
  std::vector<double> edges{lo, hi};
  for (int j = 1; j < rule.panels; ++j) {
    double x = static_cast<double>(j) / rule.panels;
    if (x > lo && x < hi) edges.push_back(x);
  }
  for (double b : rule.breakpoints)
    if (b > lo && b < hi) edges.push_back(b);
  for (double b : extra)
    if (b > lo && b < hi) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  std::vector<double> out;
  out.reserve(edges.size());
  for (double e : edges)
    if (out.empty() || e - out.back() > 1e-14) out.push_back(e);
  if (out.back() != hi) out.back() = hi;
  return out;
}

std::vector<QuadratureNode> quadrature_nodes(const QuadratureRule& rule,
                                             double lo, double hi,
                                             std::span<const double> extra) {
  const auto edges = cell_edges(rule, lo, hi, extra);
  const auto& gl = gauss_legendre(rule.nodes_per_panel);
  std::vector<QuadratureNode> out;
  out.reserve((edges.size() - 1) * gl.size());
  for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
    const double half = 0.5 * (edges[c + 1] - edges[c]);
    const double mid = 0.5 * (edges[c + 1] + edges[c]);
    for (const auto& n : gl) out.push_back({mid + half * n.x, half * n.w});
  }
  return out;
}

double integrate(const QuadratureRule& rule, const RealFn& h, double lo,
                 double hi, std::span<const double> extra) {
  if (lo == hi) return 0.0;
  const auto edges = cell_edges(rule, lo, hi, extra);
  const auto& gl = gauss_legendre(rule.nodes_per_panel);
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
    const double half = 0.5 * (edges[c + 1] - edges[c]);
    const double mid = 0.5 * (edges[c + 1] + edges[c]);
    double cell = 0.0;
    for (const auto& n : gl) cell += n.w * h(mid + half * n.x);
    total += half * cell;
  }
  return total;
}

ExtremumResult sup_inf_over_t(const RealFn& F, double lo, double hi,
                              Extremum mode, int grid_n,
                              std::span<const double> extra) {
  if (!(lo <= hi)) throw DomainError("sup/inf range reversed");
  if (grid_n < 2) grid_n = 2;
  std::vector<double> ts;
  ts.reserve(grid_n + extra.size());
  for (int i = 0; i < grid_n; ++i)
    ts.push_back(lo + (hi - lo) * i / (grid_n - 1));
  for (double x : extra)
    if (x >= lo && x <= hi) ts.push_back(x);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  std::vector<double> vals(ts.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    vals[i] = F(ts[i]);
    if (better(vals[i], vals[best], mode)) best = i;
  }
  ExtremumResult res{vals[best], ts[best]};
  if (ts.size() < 3 || lo == hi) return res;

  // golden section on the bracket formed by the neighbours
  double a = ts[best == 0 ? 0 : best - 1];
  double b = ts[std::min(best + 1, ts.size() - 1)];
  const double sign = mode == Extremum::Sup ? -1.0 : 1.0;
  auto obj = [&](double t) { return sign * F(t); };
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = obj(x1), f2 = obj(x2);
  while (b - a > 1e-8) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = obj(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = obj(x2);
    }
  }
  const double xm = 0.5 * (a + b);
  const double vm = F(xm);
  if (better(vm, res.value, mode)) res = {vm, xm};
  return res;
}

}  // namespace hammer
