#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "wr/curves.hpp"
#include "wr/vec3.hpp"

namespace wrtest {

using wr::UnitVec3;
using wr::Vec3;

inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Vec3 random_vec(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  return {n(rng), n(rng), n(rng)};
}

inline UnitVec3 random_unit(std::mt19937_64& rng) { return UnitVec3(random_vec(rng)); }

struct Rotation {
  UnitVec3 axis;
  double angle;
  Vec3 apply(const Vec3& v) const { return wr::rotate_about(v, axis, angle); }
};

inline Rotation random_rotation(std::mt19937_64& rng) {
  return {random_unit(rng), uniform(rng, 0.0, 2.0 * M_PI)};
}

/// Independent spherical-excess oracle: l'Huilier's formula from the three
/// side lengths, signed by the triple product. Never touches the library's
/// half-angle tangent form.
inline double lhuilier_signed_area(const UnitVec3& a, const UnitVec3& b,
                                   const UnitVec3& c) {
  const double sa = wr::angle_between(b, c);
  const double sb = wr::angle_between(c, a);
  const double sc = wr::angle_between(a, b);
  const double s = 0.5 * (sa + sb + sc);
  const double t = std::tan(0.5 * s) * std::tan(0.5 * (s - sa)) *
                   std::tan(0.5 * (s - sb)) * std::tan(0.5 * (s - sc));
  const double area = 4.0 * std::atan(std::sqrt(std::max(0.0, t)));
  return wr::triple(a.vec(), b.vec(), c.vec()) >= 0.0 ? area : -area;
}

/// Random simple skew polygon with n vertices. Rejection-sampled so that
/// non-adjacent edges keep a healthy separation (keeps quadrature oracles
/// well conditioned) and corner angles are positive.
inline wr::PolygonalCurve random_simple_polygon(std::mt19937_64& rng, int n,
                                                double min_separation = 0.1) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Vec3> verts;
    verts.reserve(static_cast<std::size_t>(n));
    // Perturbed circle: simple by construction for modest perturbations,
    // skew because of the z component.
    const double rho = 1.0;
    bool ok = true;
    for (int i = 0; i < n; ++i) {
      const double phi = 2.0 * M_PI * i / n;
      const Vec3 base{rho * std::cos(phi), rho * std::sin(phi), 0.0};
      verts.push_back(base + random_vec(rng, 0.25 / std::sqrt(static_cast<double>(n))));
    }
    wr::PolygonalCurve poly(verts);
    if (poly.find_self_intersection()) continue;
    double mind = 1e300;
    for (int i = 0; i < n && ok; ++i) {
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        mind = std::min(mind, wr::segment_distance(poly.vertex(i), poly.vertex(i + 1),
                                                   poly.vertex(j), poly.vertex(j + 1)));
      }
    }
    if (mind < min_separation * poly.diameter() / n) continue;
    for (int i = 0; i < n; ++i) {
      if (poly.corner_angle(i) < 0.2) ok = false;
    }
    if (ok) return poly;
  }
  throw std::runtime_error("random_simple_polygon: rejection sampling failed");
}

/// Random smooth closed curve: circle of radius ~2 plus a few low-order
/// harmonics, kept small enough that |C'| >= 1 holds.
inline wr::ParametricCurve random_fourier_curve(std::mt19937_64& rng,
                                                int harmonics = 3,
                                                double amplitude = 0.25) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    wr::FourierCoeffs fc;
    fc.cos_xyz.assign(static_cast<std::size_t>(harmonics) + 2, Vec3{0, 0, 0});
    fc.sin_xyz.assign(static_cast<std::size_t>(harmonics) + 2, Vec3{0, 0, 0});
    fc.cos_xyz[1] = {2.0, 0.0, 0.0};
    fc.sin_xyz[1] = {0.0, 2.0, 0.0};
    for (int k = 2; k <= harmonics + 1; ++k) {
      const double damp = amplitude / (k * k);
      fc.cos_xyz[static_cast<std::size_t>(k)] = random_vec(rng, damp);
      fc.sin_xyz[static_cast<std::size_t>(k)] = random_vec(rng, damp);
    }
    try {
      return wr::fourier_curve(fc, "random-fourier");
    } catch (const std::invalid_argument&) {
      continue;  // regularity rejection
    }
  }
  throw std::runtime_error("random_fourier_curve: rejection sampling failed");
}

}  // namespace wrtest
