#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace wr {

/// Thrown when an adaptive rule exhausts its subdivision budget before
/// reaching the requested tolerance. Carries the best available estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double error_indicator)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_indicator_(error_indicator) {}

  double best_estimate() const { return best_estimate_; }
  double error_indicator() const { return error_indicator_; }

 private:
  double best_estimate_;
  double error_indicator_;
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

using Fn1 = std::function<double(double)>;
using Fn2 = std::function<double(double, double)>;

/// Fixed 15-point Gauss-Legendre rule on [a, b].
double gauss15(const Fn1& f, double a, double b);

/// Adaptive 1-D integration to absolute tolerance, bisecting the interval
/// with the worst 7-vs-15 point disagreement. Throws ConvergenceError if
/// max_intervals is exhausted.
QuadResult integrate_adaptive(const Fn1& f, double a, double b,
                              double abs_tol, int max_intervals = 4000);

/// Adaptive 2-D integration over the union of the given rectangles
/// {s0, s1, t0, t1}. Globally refines the rectangle with the worst
/// 5x5-vs-7x7 tensor Gauss disagreement until the summed error estimate
/// drops below abs_tol. Deterministic for a fixed seed partition.
struct Rect {
  double s0, s1, t0, t1;
};
QuadResult integrate2d_adaptive(const Fn2& f, std::vector<Rect> seeds,
                                double abs_tol, long max_refinements = 200000);

/// Composite Simpson rule over uniformly spaced samples (periodic sum if
/// the count is even, standard Simpson when odd).
double composite_simpson(const std::vector<double>& values, double spacing);

}  // namespace wr
