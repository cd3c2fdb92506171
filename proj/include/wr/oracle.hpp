#pragma once

#include "wr/curves.hpp"

namespace wr {

/// Writhe of a polygon by direct 2-D quadrature of the Gauss integrand over
/// every non-adjacent edge pair. Slow; exists as an independent cross-check
/// of the closed-form edge-pair sum (it never calls edge_pair_solid_angle).
double writhe_polygonal_quadrature(const PolygonalCurve& p, double abs_tol = 1e-10);

/// Gauss-integral solid angle of a single segment pair by adaptive 2-D
/// quadrature; the independent counterpart of edge_pair_solid_angle.
double edge_pair_solid_angle_quadrature(const Vec3& p1, const Vec3& p2, const Vec3& q1,
                                        const Vec3& q2, double abs_tol = 1e-12);

}  // namespace wr
