#include "wr/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "wr/summation.hpp"

namespace wr {

namespace {

// Gauss-Legendre abscissas/weights on [-1, 1].
constexpr double kX5[] = {0.0, 0.5384693101056831, 0.9061798459386640};
constexpr double kW5[] = {0.5688888888888889, 0.4786286704993665, 0.2369268850561891};
constexpr double kX7[] = {0.0, 0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
constexpr double kW7[] = {0.4179591836734694, 0.3818300505051189, 0.2797053914892767,
                          0.1294849661688697};
constexpr double kX15[] = {0.0,
                           0.2011940939974345, 0.3941513470775634, 0.5709721726085388,
                           0.7244177313601701, 0.8482065834104272, 0.9372733924007060,
                           0.9879925180204854};
constexpr double kW15[] = {0.2025782419255613,
                           0.1984314853271116, 0.1861610000155622, 0.1662692058169939,
                           0.1395706779261543, 0.1071592204671719, 0.0703660474881081,
                           0.0307532419961173};

template <int N>
double gauss1d(const Fn1& f, double a, double b, const double* x, const double* w) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = w[0] * f(mid);
  for (int i = 1; i < N; ++i) {
    s += w[i] * (f(mid + half * x[i]) + f(mid - half * x[i]));
  }
  return s * half;
}

// Tensor Gauss on a rectangle.
template <int N>
double gauss2d(const Fn2& f, const Rect& r, const double* x, const double* w) {
  const double ms = 0.5 * (r.s0 + r.s1), hs = 0.5 * (r.s1 - r.s0);
  const double mt = 0.5 * (r.t0 + r.t1), ht = 0.5 * (r.t1 - r.t0);
  double nodes_s[2 * N - 1], nodes_t[2 * N - 1], ws[2 * N - 1];
  nodes_s[0] = ms; nodes_t[0] = mt; ws[0] = w[0];
  for (int i = 1; i < N; ++i) {
    nodes_s[2 * i - 1] = ms + hs * x[i];
    nodes_s[2 * i] = ms - hs * x[i];
    nodes_t[2 * i - 1] = mt + ht * x[i];
    nodes_t[2 * i] = mt - ht * x[i];
    ws[2 * i - 1] = ws[2 * i] = w[i];
  }
  double s = 0.0;
  for (int i = 0; i < 2 * N - 1; ++i) {
    double row = 0.0;
    for (int j = 0; j < 2 * N - 1; ++j) {
      row += ws[j] * f(nodes_s[i], nodes_t[j]);
    }
    s += ws[i] * row;
  }
  return s * hs * ht;
}

struct Region1 {
  double a, b, value, err;
};
struct Region2 {
  Rect r;
  double value, err;
};

}  // namespace

double gauss15(const Fn1& f, double a, double b) {
  return gauss1d<8>(f, a, b, kX15, kW15);
}

QuadResult integrate_adaptive(const Fn1& f, double a, double b,
                              double abs_tol, int max_intervals) {
  auto eval = [&](double lo, double hi) {
    const double v7 = gauss1d<4>(f, lo, hi, kX7, kW7);
    const double v15 = gauss1d<8>(f, lo, hi, kX15, kW15);
    return Region1{lo, hi, v15, std::abs(v15 - v7)};
  };
  auto worse = [](const Region1& l, const Region1& r) { return l.err < r.err; };
  std::priority_queue<Region1, std::vector<Region1>, decltype(worse)> heap(worse);
  heap.push(eval(a, b));
  long evals = 23;
  double total_err = heap.top().err;
  int n = 1;
  while (total_err > abs_tol && n < max_intervals) {
    Region1 worst = heap.top();
    heap.pop();
    total_err -= worst.err;
    const double mid = 0.5 * (worst.a + worst.b);
    Region1 left = eval(worst.a, mid), right = eval(mid, worst.b);
    evals += 46;
    total_err += left.err + right.err;
    heap.push(left);
    heap.push(right);
    ++n;
  }
  CompensatedSum sum;
  std::vector<Region1> regions;
  regions.reserve(heap.size());
  while (!heap.empty()) {
    regions.push_back(heap.top());
    heap.pop();
  }
  std::sort(regions.begin(), regions.end(),
            [](const Region1& l, const Region1& r) { return l.a < r.a; });
  for (const auto& reg : regions) sum += reg.value;
  if (total_err > abs_tol) {
    throw ConvergenceError("integrate_adaptive: tolerance not reached",
                           sum.result(), total_err);
  }
  return {sum.result(), total_err, evals};
}

QuadResult integrate2d_adaptive(const Fn2& f, std::vector<Rect> seeds,
                                double abs_tol, long max_refinements) {
  auto eval = [&](const Rect& r) {
    const double v5 = gauss2d<3>(f, r, kX5, kW5);
    const double v7 = gauss2d<4>(f, r, kX7, kW7);
    return Region2{r, v7, std::abs(v7 - v5)};
  };
  auto worse = [](const Region2& l, const Region2& r) { return l.err < r.err; };
  std::priority_queue<Region2, std::vector<Region2>, decltype(worse)> heap(worse);
  long evals = 0;
  double total_err = 0.0;
  for (const auto& r : seeds) {
    Region2 reg = eval(r);
    evals += 25 + 49;
    total_err += reg.err;
    heap.push(reg);
  }
  long refinements = 0;
  while (total_err > abs_tol && refinements < max_refinements) {
    Region2 worst = heap.top();
    heap.pop();
    total_err -= worst.err;
    const Rect& r = worst.r;
    const double ms = 0.5 * (r.s0 + r.s1), mt = 0.5 * (r.t0 + r.t1);
    const Rect children[4] = {{r.s0, ms, r.t0, mt},
                              {ms, r.s1, r.t0, mt},
                              {r.s0, ms, mt, r.t1},
                              {ms, r.s1, mt, r.t1}};
    for (const auto& c : children) {
      Region2 reg = eval(c);
      evals += 74;
      total_err += reg.err;
      heap.push(reg);
    }
    ++refinements;
  }
  std::vector<Region2> regions;
  regions.reserve(heap.size());
  while (!heap.empty()) {
    regions.push_back(heap.top());
    heap.pop();
  }
  std::sort(regions.begin(), regions.end(), [](const Region2& l, const Region2& r) {
    if (l.r.s0 != r.r.s0) return l.r.s0 < r.r.s0;
    if (l.r.t0 != r.r.t0) return l.r.t0 < r.r.t0;
    if (l.r.s1 != r.r.s1) return l.r.s1 < r.r.s1;
    return l.r.t1 < r.r.t1;
  });
  CompensatedSum sum;
  for (const auto& reg : regions) sum += reg.value;
  if (total_err > abs_tol) {
    throw ConvergenceError("integrate2d_adaptive: tolerance not reached",
                           sum.result(), total_err);
  }
  return {sum.result(), total_err, evals};
}

double composite_simpson(const std::vector<double>& values, double spacing) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * spacing * (values[0] + values[1]);
  CompensatedSum s;
  std::size_t limit = n;
  // Even sample count: close the last three intervals with a 3/8 rule.
  const bool needs_38 = (n % 2 == 0);
  if (needs_38) limit = n - 3;
  for (std::size_t i = 0; i + 2 < limit + (needs_38 ? 1 : 0); i += 2) {
    s += spacing / 3.0 * (values[i] + 4.0 * values[i + 1] + values[i + 2]);
  }
  if (needs_38) {
    s += 3.0 * spacing / 8.0 *
         (values[n - 4] + 3.0 * values[n - 3] + 3.0 * values[n - 2] + values[n - 1]);
  }
  return s.result();
}

}  // namespace wr
