#include "wr/oracle.hpp"

#include <cmath>

#include "wr/quadrature.hpp"
#include "wr/summation.hpp"

namespace wr {

double edge_pair_solid_angle_quadrature(const Vec3& p1, const Vec3& p2, const Vec3& q1,
                                        const Vec3& q2, double abs_tol) {
  const Vec3 u = p2 - p1, v = q2 - q1;
  auto f = [&](double s, double t) {
    const Vec3 d = (p1 + u * s) - (q1 + v * t);
    const double dn = d.norm();
    return triple(u, v, d) / (dn * dn * dn);
  };
  return integrate2d_adaptive(f, {Rect{0, 1, 0, 1}}, abs_tol).value;
}

double writhe_polygonal_quadrature(const PolygonalCurve& p, double abs_tol) {
  const int n = p.size();
  const int pairs = n * (n - 3) / 2 + 1;
  CompensatedSum sum;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      sum += edge_pair_solid_angle_quadrature(p.vertex(i), p.vertex(i + 1), p.vertex(j),
                                              p.vertex(j + 1), abs_tol / pairs);
    }
  }
  return 2.0 * sum.result() / (4.0 * M_PI);
}

}  // namespace wr
