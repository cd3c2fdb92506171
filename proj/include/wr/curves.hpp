#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wr/spherical.hpp"
#include "wr/vec3.hpp"

namespace wr {

/// Position and first four derivatives of a curve at one parameter.
struct CurveJet {
  Vec3 p;
  std::array<Vec3, 4> d;  // d[0] = C', ..., d[3] = C''''
};

enum class Smoothness { kC1, kC2, kC4, kCinf };

/// Closed parametric curve with derivatives to order four, parametrized so
/// that |C'(t)| >= 1 everywhere. Derivatives are analytic when supplied by
/// a generator; the position-only factory falls back to central differences
/// with Richardson extrapolation and flags the result as estimated.
class ParametricCurve {
 public:
  using Evaluator = std::function<CurveJet(double)>;

  ParametricCurve(double period, Evaluator eval, Smoothness smoothness,
                  bool analytic_derivatives, std::vector<double> breakpoints = {},
                  std::string name = "curve");

  static ParametricCurve from_positions(double period, std::function<Vec3(double)> pos,
                                        Smoothness smoothness, std::string name = "curve");

  double period() const { return period_; }
  CurveJet jet(double t) const;
  Vec3 position(double t) const { return jet(t).p; }
  Vec3 derivative(double t, int k) const;  // k in 1..4
  UnitVec3 tangent(double t) const;
  /// d/dt of the unit tangent.
  Vec3 tangent_derivative(double t) const;

  Smoothness smoothness() const { return smoothness_; }
  bool analytic_derivatives() const { return analytic_; }
  /// Interior parameters where smoothness drops (piecewise generators);
  /// quadrature seeds its subdivision here.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::string& name() const { return name_; }

  /// Checks position and d1..d4 agree at 0 and period within tol.
  void validate_closure(double tol = 1e-10) const;
  /// Checks |d1| >= 1 on a sample grid.
  void validate_regularity(int grid = 512) const;

 private:
  double period_;
  Evaluator eval_;
  Smoothness smoothness_;
  bool analytic_;
  std::vector<double> breakpoints_;
  std::string name_;
};

/// Closed polygonal loop. Vertices may carry the parameter values of the
/// smooth curve they were inscribed at; Theorem-style pairings need them.
class PolygonalCurve {
 public:
  explicit PolygonalCurve(std::vector<Vec3> vertices, std::vector<double> params = {});

  int size() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Vec3>& vertices() const { return vertices_; }
  const Vec3& vertex(int i) const { return vertices_[wrap(i)]; }
  Vec3 edge_vector(int i) const { return vertex(i + 1) - vertex(i); }
  double edge_length(int i) const { return edge_vector(i).norm(); }
  /// Unit tangent of the edge leaving vertex i.
  UnitVec3 edge_tangent(int i) const { return UnitVec3(edge_vector(i)); }
  /// Interior angle at vertex i (pi minus the turn angle).
  double corner_angle(int i) const;

  bool has_params() const { return !params_.empty(); }
  const std::vector<double>& params() const { return params_; }

  /// Bounding-box diagonal; scale reference for tolerances.
  double diameter() const;

  struct EdgePair {
    int i, j;
  };
  /// O(n^2) scan for intersecting non-adjacent edges. Empty if simple.
  std::optional<EdgePair> find_self_intersection(double rel_tol = 1e-9) const;

 private:
  int wrap(int i) const {
    const int n = size();
    return ((i % n) + n) % n;
  }
  std::vector<Vec3> vertices_;
  std::vector<double> params_;
};

/// One smooth span of a piecewise curve, unit-speed over [0, length].
struct CurveSegment {
  double length = 0.0;
  std::function<CurveJet(double)> eval;  // local arclength in [0, length]
  bool straight = false;
  bool planar = false;
  Vec3 plane_point, plane_normal;  // valid when planar
};

/// Closed chain of smooth segments with C1 junctions.
class PiecewiseCurve {
 public:
  explicit PiecewiseCurve(std::vector<CurveSegment> segments);

  double period() const { return total_; }
  const std::vector<CurveSegment>& segments() const { return segments_; }
  const std::vector<double>& offsets() const { return offsets_; }  // segment start params
  CurveJet jet(double t) const;
  Vec3 position(double t) const { return jet(t).p; }

 private:
  std::vector<CurveSegment> segments_;
  std::vector<double> offsets_;
  double total_ = 0.0;
};

/// Tangent indicatrix: sampled unit tangents for a smooth curve, or the
/// edge-tangent chain (joined by great-circle arcs) for a polygon.
struct Tantrix {
  bool polygonal = false;
  std::vector<double> params;      // smooth only: sample parameters
  std::vector<UnitVec3> samples;   // smooth: T(params[i]); polygonal: edge tangents
};

Tantrix tantrix(const ParametricCurve& c, int samples);
Tantrix tantrix(const PolygonalCurve& p);

/// Closed loop of points on S^2 tracing the tantrix. For polygons the
/// corner arcs are geodesics densified with arc_points samples each (the
/// densification does not change the enclosed area; it is kept so callers
/// can treat both kinds uniformly).
std::vector<UnitVec3> densified_tantrix(const Tantrix& t, int arc_points = 16);

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Fuller's closed helix: `turns` full turns of a helix of the given radius
/// and pitch angle, closed by a planar racetrack (straights + circular arcs,
/// C1 junctions) lying in the plane tangent to the helix cylinder at the
/// seam. The closure's tantrix sweeps its plane's great circle exactly once,
/// so the writhe is exactly turns * (1 - sin pitch_angle). Unit speed.
ParametricCurve closed_helix(int turns, double radius, double pitch_angle);

/// Exact writhe of the closed helix construction.
double closed_helix_exact_writhe(int turns, double pitch_angle);

/// Total arclength (= period) of the closed helix construction.
double closed_helix_length(int turns, double radius, double pitch_angle);

/// Unit-speed circle of radius r >= 1 in the xy plane.
ParametricCurve circle(double radius);

/// Ellipse with semi-axes a, b >= 1 in the xy plane, trig parametrization.
ParametricCurve ellipse(double a, double b);

/// (p,q) torus knot on the torus of radii (R, r); default speed scale keeps
/// |C'| >= 1.
ParametricCurve torus_knot(int p, int q, double R, double r);

/// Closed curve from a finite Fourier series: coefficients per harmonic
/// (cos_k, sin_k) for each coordinate. Used as random test stock.
struct FourierCoeffs {
  std::vector<Vec3> cos_xyz, sin_xyz;  // index = harmonic k (0 = constant)
};
ParametricCurve fourier_curve(const FourierCoeffs& coeffs, std::string name = "fourier");

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Polygon with vertices c(t_i) exactly; parameters recorded.
PolygonalCurve inscribe(const ParametricCurve& c, const std::vector<double>& params);
/// Equispaced-in-parameter inscription with n >= 3 vertices.
PolygonalCurve inscribe(const ParametricCurve& c, int n);

double max_edge_length(const PolygonalCurve& p);

/// Replaces each corner by a circular arc in the plane of its two edges,
/// tangent to both, so the tantrix is unchanged as a point set. The result
/// is C1 and piecewise smooth. Throws if the radius does not fit a corner.
PiecewiseCurve round_corners(const PolygonalCurve& p, double radius);

// ---------------------------------------------------------------------------
// Polygon file format: '#' comment/metadata header, then one "x y z" per line.
// ---------------------------------------------------------------------------

struct PolygonFile {
  PolygonalCurve curve;
  std::map<std::string, std::string> metadata;
};

void write_polygon_file(const std::string& path, const PolygonalCurve& p,
                        const std::map<std::string, std::string>& metadata = {});
PolygonFile read_polygon_file(const std::string& path);

}  // namespace wr
