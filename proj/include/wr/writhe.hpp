#pragma once

#include <functional>
#include <optional>

#include "wr/curves.hpp"
#include "wr/quadrature.hpp"

namespace wr {

/// Controls for the adaptive integration of the Gauss writhe integral.
struct QuadratureSpec {
  double rel_tolerance = 1e-7;
  long max_subdivisions = 200000;
  /// Integrand is defined as 0 within this parameter distance of the
  /// diagonal (it vanishes there analytically; zeroing a thin band keeps
  /// the adaptive rule from chasing rounding noise). Set from the period
  /// when negative.
  double diagonal_halfwidth = -1.0;
};

/// Curve with a closed unit normal field V(t) perpendicular to the tangent.
struct FramedCurve {
  const ParametricCurve* base = nullptr;
  std::function<UnitVec3(double)> normal;

  /// Checks closure of V and perpendicularity to T on a sample grid.
  void validate(int grid = 256, double tol = 1e-8) const;
};

/// Exact writhe of a simple polygonal loop: (1/4pi) Sum over unordered
/// non-adjacent edge pairs of twice the pair's Gauss-map solid angle.
/// OpenMP-parallel over rows with a deterministic compensated reduction.
/// Throws std::domain_error (naming the edge pair) if the polygon is not
/// simple.
double writhe_polygonal(const PolygonalCurve& p);

/// Serial reference implementation of writhe_polygonal; kept for testing
/// and benchmarking against the parallel kernel. Skips no checks.
double writhe_polygonal_serial(const PolygonalCurve& p);

/// Writhe of a smooth closed curve by adaptive 2-D quadrature of the Gauss
/// integral over [0, period)^2, blocks seeded on the curve's breakpoints
/// and the diagonal. Throws ConvergenceError carrying the best estimate if
/// the tolerance cannot be met within the subdivision budget.
double writhe_smooth_quadrature(const ParametricCurve& c, const QuadratureSpec& q = {});

/// Writhe of a closed piecewise-smooth curve: segment-pair-blocked
/// quadrature; coplanar straight-straight blocks are 0 without integration.
double writhe_piecewise_quadrature(const PiecewiseCurve& c, const QuadratureSpec& q = {});

struct LinkingResult {
  long linking_number = 0;
  double residual = 0.0;  // |raw - rounded| integration diagnostic
  double raw = 0.0;
};

/// Gauss linking number of two disjoint polygonal loops, rounded to the
/// nearest integer with a residual guard of 0.1.
LinkingResult linking_number(const PolygonalCurve& a, const PolygonalCurve& b);

/// Total twist (1/2pi) closed-integral of V' . (T x V) dt by composite
/// quadrature at the given sampling density, with a half-density Richardson
/// consistency check.
double twist(const FramedCurve& f, int samples);

/// Writhe mod 2 from the spherical area enclosed by the tantrix
/// (1 + Wr = A/2pi mod 2). Returns a value in [0, 2).
double writhe_mod2_from_tantrix(const Tantrix& t);

/// Closed normal frame built by discrete parallel transport on `nodes`
/// samples, with the holonomy spread linearly over the period so the field
/// closes. The returned normal accepts any real parameter (periodic).
/// The caller keeps `c` alive for the frame's lifetime.
FramedCurve parallel_transport_frame(const ParametricCurve& c, int nodes = 2048);

}  // namespace wr
