#pragma once

#include <vector>

#include "wr/bounds.hpp"
#include "wr/curves.hpp"

namespace wr {

/// Aligned samples of two tantrix curves over a shared parameter list.
/// Derivative samples are optional; when absent they are approximated by
/// differencing the samples.
struct RibbonSampling {
  std::vector<double> params;
  std::vector<UnitVec3> T0, T1;
  std::vector<Vec3> T0p, T1p;  // d/dparam, optional (empty = difference)
};

/// Signed spherical area of the ribbon between T0 and T1:
///   integral of (T0 x T1)/(1 + T0.T1) . (T0' + T1') dt.
/// Positive when T0 runs north of T1 in the usual orientation (the region's
/// boundary is T0 forward, T1 backward). Antipodal aligned samples raise a
/// domain error naming the parameter.
double ribbon_area(const RibbonSampling& r);

/// Wr(x1) - Wr(x0) by Fuller's formula: (1/2pi) times the ribbon area of
/// the two tantrices over a common rescaled domain. The straight-line
/// homotopy between the curves is checked on a (t, lambda) grid for
/// regularity and non-antipodality against T1; this is a sampled check,
/// not a certificate.
double delta_writhe_smooth(const ParametricCurve& x0, const ParametricCurve& x1,
                           int samples, int lambda_levels = 64);

/// Per-corner terms of the polygonal Fuller decomposition.
struct CornerDecomposition {
  std::vector<double> region_areas;    // steradians, ribbon-oriented
  std::vector<double> triangle_areas;  // steradians, signed
  double total = 0.0;                  // (1/2pi) sum = Wr(x1) - Wr(x0)
};

/// Wr(x1) - Wr(x0) for a polygon x1 inscribed in x0 at recorded parameters:
/// per corner, the spherical region bounded by the T0 arc over the span and
/// the geodesics to the edge tangent, plus the corner triangle
/// (T0(t_i), T1(t_{i-1}), T1(t_i)). Hypotheses (corner angles > pi/2,
/// tangent angles < pi/2) are verified and violations name the corner.
CornerDecomposition delta_writhe_polygonal(const ParametricCurve& x0,
                                           const PolygonalCurve& x1,
                                           int samples_per_span = 64);

/// Consolidated hypothesis report for the extended Fuller formula and the
/// inscription bound.
struct HypothesisReport {
  double min_corner_angle = 0.0;
  bool corner_angles_pass = false;  // strictly > pi/2
  double max_tangent_angle = 0.0;
  bool tangent_angle_pass = false;  // < pi/2
  double max_edge = 0.0;
  double B2 = 0.0;
  bool edge_length_pass = false;  // 1/x > 5 B2
  double lemma2_bound = 0.0;      // 0.51005 K x
  bool lemma2_pass = false;
  RibbonVerdict ribbon;
  bool sampled_only = true;  // grid-sampled verification, not a proof

  bool all_pass() const {
    return corner_angles_pass && tangent_angle_pass && edge_length_pass && ribbon.pass;
  }
};

/// Always produces a report; nothing throws on a failed hypothesis.
/// B2 is estimated from the curve; the tube radius defaults to the sampling
/// heuristic unless overridden (> 0).
HypothesisReport check_hypotheses(const ParametricCurve& x0, const PolygonalCurve& x1,
                                  int grid = 512, double tube_radius = 0.0);

}  // namespace wr
