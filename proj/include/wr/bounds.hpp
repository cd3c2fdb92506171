#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wr/curves.hpp"

namespace wr {

/// Global bounds B1..B4 on |C'(t)|..|C''''(t)| under the |C'| >= 1
/// parametrization.
struct DerivativeBounds {
  double B1 = 1.0, B2 = 1.0, B3 = 1.0, B4 = 1.0;
  enum class Provenance { kAnalytic, kEstimated };
  Provenance provenance = Provenance::kAnalytic;

  void validate() const;
};

/// Derivative bounds after reparametrizing by arclength:
///   |C''(s)| < K = 2 B2,   |C'''(s)| < T = 2 B3 + 10 B2^2,
/// and B4p bounding |C''''(s)| through the chain rule (see arclength_bounds).
struct ArclengthBounds {
  double K = 0.0, T = 0.0, B4p = 0.0;
};

/// Computes K, T and the fourth-derivative bound B4p. B4p comes from the
/// Faa di Bruno expansion of C(t(s)) with t' = 1/|C'| <= 1:
///   |g'| <= B2, |g''| <= B2^2 + B1 B3 + B1 B2^2,
///   |g'''| <= 3 B2 B3 + B1 B4 + (B2^2 + B1 B3) B2
///             + 2 B1 B2 (B2^2 + B1 B3) + 3 B1^2 B2^3,
///   |t''| <= B2, |t'''| <= |g''| + 3 B2^2, |t''''| <= |g'''| + 10 B2 |g''| + 15 B2^3,
///   B4p = B4 + 6 B3 B2 + B2 (3 B2^2 + 4 |t'''|) + B1 |t''''|
/// where g = |C'| >= 1.
ArclengthBounds arclength_bounds(const DerivativeBounds& b);

struct HypothesisCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double threshold = 0.0;
};

/// The alpha n x^3 leading-order certificate plus its hypothesis checks.
/// The paper-level n O(x^4) tail carries no computable constant and is
/// reported as a note, never added to the numeric bound.
struct ErrorCertificate {
  long n = 0;
  double x = 0.0;
  double alpha = 0.0;
  double bound = 0.0;
  bool valid = false;  // all hypotheses pass; invalid certificates keep their data
  std::vector<HypothesisCheck> hypotheses;

  struct Region {
    long n = 0;
    double x = 0.0;
    double B2 = 0.0, B3 = 0.0;
    double alpha = 0.0, bound = 0.0;
    bool planar = false;
    bool pass = false;
  };
  std::vector<Region> regions;  // present for regional certificates

  std::string tail_note = "leading order only: excludes the n*O(x^4) tail "
                          "(no computable constant)";
};

/// Certificate |Wr(C) - Wr(C_n)| < alpha n x^3 with alpha = B2 (5 B2^2 + B3)
/// (the stated ceiling, used as the working constant). Fails closed: an
/// inscription with 1/x <= 5 B2 yields an invalid certificate, not a throw.
ErrorCertificate error_bound(long n, double x, const DerivativeBounds& b);

struct RegionSpec {
  long n = 0;
  double x = 0.0;
  DerivativeBounds bounds;
  bool planar = false;  // planar regions contribute nothing
};

/// Additive per-region certificate: sum of alpha_i n_i x_i^3 over non-planar
/// regions, each with its own edge-length hypothesis.
ErrorCertificate regional_error_bound(const std::vector<RegionSpec>& regions);

/// A maximal run of consecutive vertices coplanar within
/// tolerance * (run diameter), as (start index, vertex count), cyclic.
/// Runs shorter than 4 vertices are trivially coplanar and not reported.
struct PlanarRun {
  int start = 0;
  int count = 0;
};
std::vector<PlanarRun> detect_planar_runs(const PolygonalCurve& p, double tolerance = 1e-9);

struct LemmaReport {
  bool pass = false;
  double max_observed = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - max_observed
  std::string detail;
};

/// Chord-length deficit check: max over the curve of
/// span - |C(s0 + span) - C(s0)| against K^2/24 span^3 + span^5/120.
/// Requires a unit-speed curve and the regime 1/span > (5/2) K.
/// K <= 0 means: estimate it as 2 * B2 from sampled derivatives.
LemmaReport lemma_chord_bounds(const ParametricCurve& c, double span, double K = 0.0,
                               int grid = 512);

/// Tangent-angle check for an inscription: max angle between T(s) and the
/// containing edge direction against 0.51005 K x. Requires recorded
/// inscription parameters and the regime 1/x > (5/2) K.
LemmaReport lemma_tangent_angle(const ParametricCurve& c, const PolygonalCurve& p,
                                double K = 0.0, int samples_per_edge = 16);

struct RibbonVerdict {
  bool pass = false;
  double max_deviation = 0.0;
  double tube_radius = 0.0;
};

/// Embedded-ribbon heuristic: passes when the inscribed polygon never
/// strays farther than the tube radius from the curve. The tube radius is
/// user-supplied (rigorous thickness computation is out of scope); see
/// sampled_tube_radius for a sampling-based default.
RibbonVerdict ribbon_embedded_heuristic(const ParametricCurve& c, const PolygonalCurve& p,
                                        double tube_radius, int grid = 1024);

/// Heuristic lower bound for the tube radius: min of the sampled radius of
/// curvature and half the minimum distance between parameter-distant points.
double sampled_tube_radius(const ParametricCurve& c, int grid = 512);

/// Max-over-grid derivative norms inflated by 1.05, flagged as estimated.
DerivativeBounds estimate_derivative_bounds(const ParametricCurve& c, int grid = 1024);

}  // namespace wr
