#include "wr/spherical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "wr/summation.hpp"

namespace wr {

bool nearly_antipodal(const UnitVec3& a, const UnitVec3& b) {
  return angle_between(a, b) > M_PI - kAntipodalAngleTol;
}

static void require_not_antipodal(const UnitVec3& a, const UnitVec3& b,
                                  const char* who, const char* pair) {
  if (nearly_antipodal(a, b)) {
    throw std::domain_error(std::string(who) + ": antipodal pair " + pair);
  }
}

double signed_triangle_area(const UnitVec3& a, const UnitVec3& b, const UnitVec3& c) {
  require_not_antipodal(a, b, "signed_triangle_area", "(a,b)");
  require_not_antipodal(b, c, "signed_triangle_area", "(b,c)");
  require_not_antipodal(c, a, "signed_triangle_area", "(c,a)");
  const double num = triple(a.vec(), b.vec(), c.vec());
  const double den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
  return 2.0 * std::atan2(num, den);
}

double signed_polygon_area(const SphericalPolygon& p) {
  const auto& v = p.vertices;
  if (v.size() < 3) {
    throw std::invalid_argument("signed_polygon_area: need >= 3 vertices");
  }
  CompensatedSum area;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    area += signed_triangle_area(v[0], v[i], v[i + 1]);
  }
  return area.result();
}

double signed_polygon_area_from(const UnitVec3& apex,
                                const std::vector<UnitVec3>& loop) {
  if (loop.size() < 3) {
    throw std::invalid_argument("signed_polygon_area_from: need >= 3 vertices");
  }
  CompensatedSum area;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    area += signed_triangle_area(apex, loop[i], loop[(i + 1) % loop.size()]);
  }
  return area.result();
}

namespace detail {

double edge_pair_solid_angle_unchecked(const Vec3& p1, const Vec3& p2,
                                       const Vec3& q1, const Vec3& q2) {
  // Gauss-map corners in cyclic order; each side of the image quadrilateral
  // is a great-circle arc because one endpoint of the difference is fixed.
  const UnitVec3 v11((q1 - p1)), v21((q1 - p2)), v22((q2 - p2)), v12((q2 - p1));
  const double num1 = triple(v11.vec(), v21.vec(), v22.vec());
  const double den1 = 1.0 + dot(v11, v21) + dot(v21, v22) + dot(v22, v11);
  const double num2 = triple(v11.vec(), v22.vec(), v12.vec());
  const double den2 = 1.0 + dot(v11, v22) + dot(v22, v12) + dot(v12, v11);
  return 2.0 * (std::atan2(num1, den1) + std::atan2(num2, den2));
}

}  // namespace detail

double edge_pair_solid_angle(const Vec3& p1, const Vec3& p2,
                             const Vec3& q1, const Vec3& q2) {
  const double scale = std::max({(p2 - p1).norm(), (q2 - q1).norm(), 1e-300});
  const double eps = 1e-12 * scale;
  if ((q1 - p1).norm() < eps || (q1 - p2).norm() < eps ||
      (q2 - p1).norm() < eps || (q2 - p2).norm() < eps) {
    throw std::domain_error("edge_pair_solid_angle: segments share an endpoint");
  }
  if (segment_distance(p1, p2, q1, q2) < eps) {
    throw std::domain_error("edge_pair_solid_angle: segments intersect");
  }
  return detail::edge_pair_solid_angle_unchecked(p1, p2, q1, q2);
}

std::vector<UnitVec3> geodesic_points(const UnitVec3& a, const UnitVec3& b, int k) {
  if (k < 2) throw std::invalid_argument("geodesic_points: k must be >= 2");
  require_not_antipodal(a, b, "geodesic_points", "(a,b)");
  const double omega = angle_between(a, b);
  std::vector<UnitVec3> pts;
  pts.reserve(static_cast<std::size_t>(k));
  if (omega < 1e-14) {
    pts.assign(static_cast<std::size_t>(k), a);
    return pts;
  }
  const double so = std::sin(omega);
  for (int i = 0; i < k; ++i) {
    const double f = static_cast<double>(i) / (k - 1);
    const Vec3 p = a.vec() * (std::sin((1.0 - f) * omega) / so) +
                   b.vec() * (std::sin(f * omega) / so);
    pts.emplace_back(p);
  }
  return pts;
}

double segment_distance(const Vec3& p1, const Vec3& p2, const Vec3& q1, const Vec3& q2) {
  // Standard closest-point computation with clamping (Ericson-style).
  const Vec3 d1 = p2 - p1, d2 = q2 - q1, r = p1 - q1;
  const double a = d1.norm2(), e = d2.norm2(), f = dot(d2, r);
  double s = 0.0, t = 0.0;
  const double tiny = 1e-300;
  if (a <= tiny && e <= tiny) {
    return r.norm();
  }
  if (a <= tiny) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e <= tiny) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      if (denom > 0.0) {
        s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
      }
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  const Vec3 cp = p1 + d1 * s, cq = q1 + d2 * t;
  return (cp - cq).norm();
}

}  // namespace wr
