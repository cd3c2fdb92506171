#pragma once

#include <vector>

#include "wr/vec3.hpp"

namespace wr {

/// Closed loop of >=3 points on S^2; the last vertex connects back to the
/// first. Consecutive vertices must not be antipodal.
struct SphericalPolygon {
  std::vector<UnitVec3> vertices;
};

/// Angular threshold below pi at which a pair of directions is treated as
/// antipodal (the joining geodesic is numerically undefined past this).
inline constexpr double kAntipodalAngleTol = 1e-9;

bool nearly_antipodal(const UnitVec3& a, const UnitVec3& b);

/// Signed area (steradians) of the geodesic triangle abc.
///
/// Uses the half-angle arctangent form of the spherical excess
/// (tan(E/2) = a.(b x c) / (1 + a.b + b.c + c.a)), which stays accurate
/// for slim triangles where summing corner angles cancels catastrophically.
/// Sign equals the sign of a.(b x c); |result| < 2*pi.
/// Throws std::domain_error if any two of a, b, c are antipodal.
double signed_triangle_area(const UnitVec3& a, const UnitVec3& b, const UnitVec3& c);

/// Signed area of a closed spherical polygon, as the fan of signed
/// triangles from vertex 0. Reversing orientation negates the result.
/// Self-intersecting loops accumulate area with multiplicity.
double signed_polygon_area(const SphericalPolygon& p);

/// Fan area from an arbitrary apex instead of vertex 0. Changing the apex
/// shifts the result by multiples of 4*pi (the winding about the apex), so
/// consumers of A/2pi mod 2 are apex-independent. The apex must not be
/// antipodal to any loop vertex.
double signed_polygon_area_from(const UnitVec3& apex, const std::vector<UnitVec3>& loop);

/// Signed spherical area (steradians) swept by the Gauss map
/// (s,t) -> normalize(q(t) - p(s)) over the segment pair (p1p2, q1q2).
///
/// Equal to the integral of the Gauss linking integrand over the two
/// segments, i.e. 4*pi times the pair's contribution to the writhe sum.
/// Evaluated as the geodesic quadrilateral with vertices
///   unit(q1-p1), unit(q1-p2), unit(q2-p2), unit(q2-p1)
/// split into two triangles along the fixed diagonal unit(q1-p1)-unit(q2-p2).
/// Throws std::domain_error if the segments share an endpoint or intersect.
double edge_pair_solid_angle(const Vec3& p1, const Vec3& p2,
                             const Vec3& q1, const Vec3& q2);

namespace detail {
/// Same as edge_pair_solid_angle but skips the disjointness checks.
/// Callers must have established that the segments are disjoint.
double edge_pair_solid_angle_unchecked(const Vec3& p1, const Vec3& p2,
                                       const Vec3& q1, const Vec3& q2);
}  // namespace detail

/// k >= 2 points on the minor arc from a to b, inclusive, equally spaced
/// in angle. a == b yields k copies of a. Throws on antipodal inputs.
std::vector<UnitVec3> geodesic_points(const UnitVec3& a, const UnitVec3& b, int k);

/// Minimum distance between segments [p1,p2] and [q1,q2].
double segment_distance(const Vec3& p1, const Vec3& p2, const Vec3& q1, const Vec3& q2);

}  // namespace wr
