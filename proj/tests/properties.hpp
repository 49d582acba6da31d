#ifndef HAMMERSTEIN_TESTS_PROPERTIES_HPP_
#define HAMMERSTEIN_TESTS_PROPERTIES_HPP_

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "hammerstein/envelopes.hpp"
#include "hammerstein/measures.hpp"
#include "hammerstein/systems.hpp"

namespace testing {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  double worst = 0.0;  // largest violation seen
  bool ok() const { return cases > 0 && failures == 0; }
};

inline constexpr unsigned kSeed = 20240611u;

class Random {
 public:
  explicit Random(unsigned seed) : rng_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }

  // atoms plus, half of the time, a positive polynomial density
  hammer::StieltjesMeasure measure() {
    std::vector<hammer::Atom> atoms;
    const int n = integer(0, 4);
    for (int i = 0; i < n; ++i) atoms.push_back({uniform(0, 1), uniform(0, 2)});
    if (integer(0, 1) == 0) return hammer::StieltjesMeasure(atoms);
    const double a = uniform(0, 1), b = uniform(0, 1), k = uniform(0, 1);
    return hammer::StieltjesMeasure(
        atoms, hammer::Density{[a, b, k](double t) { return a + b * (t - k) * (t - k); }, {}});
  }

  // a smooth test function on [0,1]
  std::function<double(double)> function() {
    const double a = uniform(-2, 2), b = uniform(-2, 2), w = uniform(0.5, 6), p = uniform(0, 3);
    return [=](double t) { return a + b * std::sin(w * t + p) + 0.3 * a * t * t; };
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline PropertyResult measure_linearity(int cases = 1000) {
  PropertyResult r{"measure linearity", cases};
  Random rnd(kSeed);
  for (int i = 0; i < cases; ++i) {
    auto A = rnd.measure();
    auto u = rnd.function(), v = rnd.function();
    const double a = rnd.uniform(-3, 3), b = rnd.uniform(-3, 3);
    const double lhs = A.apply([&](double t) { return a * u(t) + b * v(t); });
    const double rhs = a * A.apply(u) + b * A.apply(v);
    const double scale = 1.0 + std::abs(a * A.apply([&](double t) { return std::abs(u(t)); })) +
                         std::abs(b * A.apply([&](double t) { return std::abs(v(t)); }));
    const double err = std::abs(lhs - rhs) / scale;
    r.worst = std::max(r.worst, err);
    if (err > 1e-12) ++r.failures;
  }
  return r;
}

inline PropertyResult measure_monotonicity(int cases = 1000) {
  PropertyResult r{"measure monotonicity", cases};
  Random rnd(kSeed + 1);
  for (int i = 0; i < cases; ++i) {
    auto A = rnd.measure();
    auto u = rnd.function(), w = rnd.function();
    auto v = [&](double t) { return u(t) + std::abs(w(t)); };
    const double d = A.apply(u) - A.apply(v);
    r.worst = std::max(r.worst, d);
    if (d > 1e-12) ++r.failures;
  }
  return r;
}

inline PropertyResult atom_exactness(int cases = 1000) {
  PropertyResult r{"atoms-only apply is exact", cases};
  Random rnd(kSeed + 2);
  for (int i = 0; i < cases; ++i) {
    std::vector<hammer::Atom> atoms;
    const int n = rnd.integer(1, 5);
    for (int k = 0; k < n; ++k) atoms.push_back({rnd.uniform(0, 1), rnd.uniform(0, 2)});
    hammer::StieltjesMeasure A(atoms);
    auto u = rnd.function();
    double direct = 0.0;
    for (const auto& a : atoms) direct += a.w * u(a.t);
    const double err = std::abs(A.apply(u) - direct);
    r.worst = std::max(r.worst, err);
    if (err > 4 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(direct))) ++r.failures;
  }
  return r;
}

// Enlarging the box never lowers the sup nor raises the inf.
inline PropertyResult box_monotonicity(int cases = 1000) {
  PropertyResult r{"box monotonicity", cases};
  Random rnd(kSeed + 3);
  for (int i = 0; i < cases; ++i) {
    const double a = rnd.uniform(-2, 2), b = rnd.uniform(-2, 2), c = rnd.uniform(-2, 2);
    const double w = rnd.uniform(0.5, 5);
    auto f = hammer::Nonlinearity::scalar(
        [=](double t, double u) { return a * u * u + b * std::sin(w * u + t) + c * t * u; });
    const double t0 = rnd.uniform(0, 0.5), t1 = t0 + rnd.uniform(0.05, 0.5);
    const double u0 = rnd.uniform(-2, 1), u1 = u0 + rnd.uniform(0.1, 2);
    const hammer::Interval T{t0, t1}, U{u0, u1};
    const hammer::Interval T2{std::max(0.0, t0 - rnd.uniform(0, 0.3)),
                              std::min(1.0, t1 + rnd.uniform(0, 0.3))};
    const hammer::Interval U2{u0 - rnd.uniform(0, 1), u1 + rnd.uniform(0, 1)};
    const double rho = rnd.uniform(0.1, 3);
    const int n = 32;
    auto s1 = hammer::box_extremum(f, T, U, std::nullopt, rho, hammer::Extremum::Sup, n);
    auto s2 = hammer::box_extremum(f, T2, U2, std::nullopt, rho, hammer::Extremum::Sup, n);
    auto i1 = hammer::box_extremum(f, T, U, std::nullopt, rho, hammer::Extremum::Inf, n);
    auto i2 = hammer::box_extremum(f, T2, U2, std::nullopt, rho, hammer::Extremum::Inf, n);
    const double v = std::max(s1.value - s2.value, i2.value - i1.value);
    r.worst = std::max(r.worst, v);
    // refinement stops at roundoff, not at the exact extremum
    if (v > 1e-12 * (1.0 + std::abs(s2.value) + std::abs(i2.value))) ++r.failures;
  }
  return r;
}

struct Matrix {
  double a11, a12, a21, a22;
};

// a11, a22 > 0, a12, a21 <= 0 and det > 0
inline Matrix admissible_matrix(Random& rnd) {
  for (;;) {
    Matrix m{rnd.uniform(0.01, 3), -rnd.uniform(0, 2), -rnd.uniform(0, 2), rnd.uniform(0.01, 3)};
    if (rnd.integer(0, 9) == 0) m.a12 = 0.0;
    if (m.a11 * m.a22 - m.a12 * m.a21 > 1e-3) return m;
  }
}

inline PropertyResult matrix_order(int cases = 1000) {
  PropertyResult r{"order preservation of the inverse", cases};
  Random rnd(kSeed + 4);
  for (int i = 0; i < cases; ++i) {
    const auto m = admissible_matrix(rnd);
    const std::array<double, 2> p{rnd.uniform(-5, 5), rnd.uniform(-5, 5)};
    const std::array<double, 2> q{p[0] + rnd.uniform(0, 3), p[1] + rnd.uniform(0, 3)};
    const auto x = hammer::matrix2_solve(m.a11, m.a12, m.a21, m.a22, p);
    const auto y = hammer::matrix2_solve(m.a11, m.a12, m.a21, m.a22, q);
    const double scale = 1.0 + std::abs(x[0]) + std::abs(x[1]) + std::abs(y[0]) + std::abs(y[1]);
    const double v = std::max(x[0] - y[0], x[1] - y[1]) / scale;
    // the inverse agrees with the explicit 2x2 formula
    const double det = m.a11 * m.a22 - m.a12 * m.a21;
    const double e0 = std::abs(x[0] - (m.a22 * p[0] - m.a12 * p[1]) / det);
    const double e1 = std::abs(x[1] - (-m.a21 * p[0] + m.a11 * p[1]) / det);
    const double bad = std::max({v, e0 / scale, e1 / scale});
    r.worst = std::max(r.worst, bad);
    if (v > 1e-14 || e0 / scale > 1e-12 || e1 / scale > 1e-12) ++r.failures;
  }
  return r;
}

// N = [[1-a, -b], [-c, 1-d]], N_mu = [[mu-a, -b], [-c, mu-d]]:
// N_mu^{-1} (p,q) <= N^{-1} (p,q) for p, q >= 0 and mu > 1.
inline PropertyResult matrix_mu_monotonicity(int cases = 1000) {
  PropertyResult r{"mu-monotonicity of the inverse", cases};
  Random rnd(kSeed + 5);
  for (int i = 0; i < cases; ++i) {
    double a, b, c, d;
    do {
      a = rnd.uniform(0, 0.99);
      d = rnd.uniform(0, 0.99);
      b = rnd.uniform(0, 1.5);
      c = rnd.uniform(0, 1.5);
    } while (!((1 - a) * (1 - d) - b * c > 1e-3));
    const double mu = 1.0 + rnd.uniform(1e-3, 4.0);
    const std::array<double, 2> pq{rnd.uniform(0, 5), rnd.uniform(0, 5)};
    const auto x1 = hammer::matrix2_solve(1 - a, -b, -c, 1 - d, pq);
    const auto xm = hammer::matrix2_solve(mu - a, -b, -c, mu - d, pq);
    const double scale = 1.0 + std::abs(x1[0]) + std::abs(x1[1]);
    const double v = std::max(xm[0] - x1[0], xm[1] - x1[1]) / scale;
    const bool nonneg = xm[0] >= 0.0 && xm[1] >= 0.0 && x1[0] >= 0.0 && x1[1] >= 0.0;
    r.worst = std::max(r.worst, v);
    if (v > 1e-14 || !nonneg) ++r.failures;
  }
  return r;
}

}  // namespace testing

#endif  // HAMMERSTEIN_TESTS_PROPERTIES_HPP_
