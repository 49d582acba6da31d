#include "hammerstein/envelopes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace hammer {

namespace {

std::vector<double> axis(Interval r, int n, bool with_zero) {
  std::vector<double> xs;
  if (r.lo == r.hi || n < 2) {
    xs.push_back(r.lo);
    return xs;
  }
  xs.reserve(n + 1);
  for (int i = 0; i < n; ++i) xs.push_back(r.lo + r.width() * i / (n - 1));
  if (with_zero && r.lo < 0.0 && r.hi > 0.0) xs.push_back(0.0);
  std::sort(xs.begin(), xs.end());
  return xs;
}

std::string point_text(std::span<const double> x) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < x.size(); ++i)
    out << (i ? ", " : "") << format_number(x[i]);
  out << ")";
  return out.str();
}

// Minimizes `obj` over a box by compass search from `start`.
template <class Obj>
std::vector<double> compass_min(const Obj& obj, std::vector<double> x,
                                std::span<const Interval> box,
                                std::vector<double> step, double& best) {
  const std::size_t d = x.size();
  std::vector<double> floor_step(d);
  for (std::size_t i = 0; i < d; ++i)
    floor_step[i] = 1e-12 * std::max(1.0, box[i].width());
  for (int it = 0; it < 2000; ++it) {
    bool improved = false;
    for (std::size_t i = 0; i < d && !improved; ++i) {
      if (step[i] <= floor_step[i]) continue;
      for (double dir : {1.0, -1.0}) {
        std::vector<double> y = x;
        y[i] = std::clamp(x[i] + dir * step[i], box[i].lo, box[i].hi);
        if (y[i] == x[i]) continue;
        const double v = obj(y);
        if (v < best) {
          best = v;
          x = y;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      bool any = false;
      for (std::size_t i = 0; i < d; ++i) {
        step[i] *= 0.5;
        any = any || step[i] > floor_step[i];
      }
      if (!any) break;
    }
  }
  return x;
}

// Grid minimum of `obj` over a box followed by compass refinement from the
// best grid points and from every discrete local minimum of the grid, so
// each basin the grid resolves is refined. Returns the minimizer; `best`
// receives the value.
template <class Obj>
std::vector<double> grid_min(const Obj& obj, std::span<const Interval> box,
                             const std::vector<std::vector<double>>& axes,
                             double& best) {
  const std::size_t d = axes.size();
  constexpr std::size_t kStarts = 32;
  std::vector<std::size_t> stride(d, 1);
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    stride[i] = total;
    total *= axes[i].size();
  }
  std::vector<double> vals(total);
  std::vector<std::size_t> idx(d, 0);
  std::vector<double> x(d);
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t i = 0; i < d; ++i) x[i] = axes[i][idx[i]];
    vals[flat] = obj(x);
    std::size_t k = 0;
    while (k < d && ++idx[k] == axes[k].size()) idx[k++] = 0;
  }
  auto point = [&](std::size_t flat) {
    std::vector<double> y(d);
    for (std::size_t i = 0; i < d; ++i)
      y[i] = axes[i][(flat / stride[i]) % axes[i].size()];
    return y;
  };
  std::vector<std::size_t> order(total);
  for (std::size_t i = 0; i < total; ++i) order[i] = i;
  const std::size_t n_best = std::min<std::size_t>(4, total);
  std::partial_sort(order.begin(), order.begin() + n_best, order.end(),
                    [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  std::vector<std::size_t> starts(order.begin(), order.begin() + n_best);
  std::vector<std::size_t> minima;
  for (std::size_t flat = 0; flat < total; ++flat) {
    bool local = true;
    for (std::size_t i = 0; i < d && local; ++i) {
      const std::size_t n = axes[i].size(), pos = (flat / stride[i]) % n;
      if (pos > 0 && vals[flat - stride[i]] < vals[flat]) local = false;
      if (pos + 1 < n && vals[flat + stride[i]] < vals[flat]) local = false;
    }
    if (local) minima.push_back(flat);
  }
  const std::size_t n_min = std::min(kStarts, minima.size());
  std::partial_sort(minima.begin(), minima.begin() + n_min, minima.end(),
                    [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
  for (std::size_t i = 0; i < n_min; ++i)
    if (std::find(starts.begin(), starts.end(), minima[i]) == starts.end())
      starts.push_back(minima[i]);
  best = vals[starts.front()];
  std::vector<double> arg = point(starts.front());
  std::vector<double> step(d);
  for (std::size_t i = 0; i < d; ++i)
    step[i] = axes[i].size() > 1 ? box[i].width() / (axes[i].size() - 1) : 0.0;
  for (std::size_t s0 : starts) {
    double v = vals[s0];
    auto y = compass_min(obj, point(s0), box, step, v);
    if (v < best) best = v, arg = y;
  }
  return arg;
}

}  // namespace

Nonlinearity Nonlinearity::scalar(std::function<double(double, double)> f,
                                  std::string text) {
  Nonlinearity n;
  n.fn = [f = std::move(f)](double t, double u, double) { return f(t, u); };
  n.arity = 1;
  n.text = std::move(text);
  return n;
}

Nonlinearity Nonlinearity::coupled(
    std::function<double(double, double, double)> f, std::string text) {
  Nonlinearity n;
  n.fn = std::move(f);
  n.arity = 2;
  n.text = std::move(text);
  return n;
}

Nonlinearity Nonlinearity::zero(int arity) {
  Nonlinearity n;
  n.fn = [](double, double, double) { return 0.0; };
  n.arity = arity;
  n.text = "0";
  return n;
}

Functional Functional::zero() {
  Functional f;
  f.h = [](std::span<const double>) { return 0.0; };
  f.text = "0";
  f.zero_flag = true;
  return f;
}

double Functional::at_values(std::span<const double> xs) const {
  return h ? h(xs) : 0.0;
}

double Functional::evaluate(const RealFn& u, const RealFn& v) const {
  if (zero_flag) return 0.0;
  if (general) return general(u, v);
  std::vector<double> xs;
  xs.reserve(points.size());
  for (const auto& p : points) {
    if (p.component == 1 && !v)
      throw SpecificationError("functional reads a second component");
    xs.push_back(p.component == 0 ? u(p.t) : v(p.t));
  }
  return at_values(xs);
}

BoxExtremum box_extremum(const Nonlinearity& f, Interval t_range,
                         Interval u_range, std::optional<Interval> v_range,
                         double rho, Extremum mode, int points_per_axis) {
  if (!(rho > 0.0))
    throw DomainError("envelope radius must be positive, got " +
                      format_number(rho));
  std::vector<Interval> box{t_range, u_range};
  if (v_range) box.push_back(*v_range);
  for (const auto& r : box)
    if (!(r.lo <= r.hi)) throw DomainError("envelope box has a reversed range");
  std::vector<std::vector<double>> axes;
  axes.push_back(axis(t_range, points_per_axis, false));
  axes.push_back(axis(u_range, points_per_axis, true));
  if (v_range) axes.push_back(axis(*v_range, points_per_axis, true));

  const double sign = mode == Extremum::Sup ? -1.0 : 1.0;
  double sampled_min = INFINITY;
  auto eval = [&](const std::vector<double>& x) {
    const double val = f(x[0], x[1], x.size() > 2 ? x[2] : 0.0);
    if (std::isnan(val))
      throw DomainError("nonlinearity is undefined at " + point_text(x));
    sampled_min = std::min(sampled_min, val);
    return val;
  };
  auto obj = [&](const std::vector<double>& x) { return sign * eval(x); };
  double best = 0.0;
  auto arg = grid_min(obj, box, axes, best);
  BoxExtremum r;
  r.raw = sign * best;
  r.value = r.raw / rho;
  r.t = arg[0];
  r.u = arg[1];
  r.v = arg.size() > 2 ? arg[2] : 0.0;
  r.sampled_min = sampled_min;
  return r;
}

ConditionReport domination_check(const Functional& H,
                                 std::span<const StieltjesMeasure> measures,
                                 std::span<const Interval> boxes,
                                 Domination direction, int points_per_axis,
                                 double tol) {
  ConditionReport rep(direction == Domination::AtMost ? "domination_le"
                                                      : "domination_ge");
  if (!H.point_evaluable()) {
    rep.set_verdict(Verdict::NotCheckable);
    rep.note("reason", "functional is not a finite set of point evaluations");
    return rep;
  }
  for (const auto& m : measures)
    if (m.density()) {
      rep.set_verdict(Verdict::NotCheckable);
      rep.note("reason", "measure has a density part");
      return rep;
    }
  const std::size_t m = H.points.size();
  if (boxes.size() != m)
    throw SpecificationError("domination check needs one value range per "
                             "evaluation point of the functional");
  std::vector<double> coef(m, 0.0);
  for (std::size_t l = 0; l < measures.size(); ++l) {
    for (const auto& a : measures[l].atoms()) {
      if (a.w == 0.0) continue;
      bool matched = false;
      for (std::size_t p = 0; p < m && !matched; ++p) {
        if (H.points[p].component == static_cast<int>(l) &&
            std::abs(H.points[p].t - a.t) < 1e-12) {
          coef[p] += a.w;
          matched = true;
        }
      }
      if (!matched)
        throw SpecificationError(
            "measure atom at t=" + format_number(a.t) + " (component " +
            std::to_string(l + 1) +
            ") has no matching evaluation point in the functional");
    }
  }
  for (std::size_t p = 0; p < m; ++p) {
    rep.set("coef." + std::to_string(p + 1), coef[p]);
    rep.set("box." + std::to_string(p + 1) + ".lo", boxes[p].lo);
    rep.set("box." + std::to_string(p + 1) + ".hi", boxes[p].hi);
  }

  const double sign = direction == Domination::AtMost ? 1.0 : -1.0;
  // margin >= 0 means the inequality holds at x
  auto margin_at = [&](const std::vector<double>& x) {
    double lin = 0.0;
    for (std::size_t p = 0; p < m; ++p) lin += coef[p] * x[p];
    const double hv = H.at_values(x);
    if (std::isnan(hv))
      throw DomainError("functional is undefined at " + point_text(x));
    return sign * (lin - hv);
  };
  double margin = 0.0;
  std::vector<double> worst;
  if (m == 0) {
    margin = margin_at({});
  } else {
    int n = points_per_axis;
    if (m > 2)
      n = std::max(3, static_cast<int>(std::floor(
                          std::pow(double(1 << 21), 1.0 / double(m)))));
    n = std::min(n, points_per_axis);
    std::vector<std::vector<double>> axes;
    for (std::size_t p = 0; p < m; ++p) axes.push_back(axis(boxes[p], n, true));
    worst = grid_min(margin_at, boxes, axes, margin);
  }
  rep.set("margin", margin);
  rep.set("tol", tol);
  for (std::size_t p = 0; p < worst.size(); ++p)
    rep.set("worst." + std::to_string(p + 1), worst[p]);
  rep.set_verdict(margin >= -tol ? Verdict::Pass : Verdict::Fail);
  return rep;
}

}  // namespace hammer
