#include "wr/fuller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wr/quadrature.hpp"
#include "wr/summation.hpp"

namespace wr {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

Vec3 difference_derivative(const std::vector<UnitVec3>& T,
                           const std::vector<double>& params, std::size_t i) {
  const std::size_t n = T.size();
  if (n < 2) return {0, 0, 0};
  if (i == 0) {
    return (T[1].vec() - T[0].vec()) / (params[1] - params[0]);
  }
  if (i + 1 == n) {
    return (T[n - 1].vec() - T[n - 2].vec()) / (params[n - 1] - params[n - 2]);
  }
  return (T[i + 1].vec() - T[i - 1].vec()) / (params[i + 1] - params[i - 1]);
}

}  // namespace

double ribbon_area(const RibbonSampling& r) {
  const std::size_t n = r.params.size();
  if (n < 3 || r.T0.size() != n || r.T1.size() != n) {
    throw std::invalid_argument("ribbon_area: aligned sample lists of >= 3 required");
  }
  const bool have_d = !r.T0p.empty();
  if (have_d && (r.T0p.size() != n || r.T1p.size() != n)) {
    throw std::invalid_argument("ribbon_area: derivative lists must align with samples");
  }
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (nearly_antipodal(r.T0[i], r.T1[i])) {
      std::ostringstream os;
      os << "ribbon_area: antipodal tangents at parameter " << r.params[i];
      throw std::domain_error(os.str());
    }
    const Vec3 d0 = have_d ? r.T0p[i] : difference_derivative(r.T0, r.params, i);
    const Vec3 d1 = have_d ? r.T1p[i] : difference_derivative(r.T1, r.params, i);
    f[i] = dot(cross(r.T0[i], r.T1[i]), d0 + d1) / (1.0 + dot(r.T0[i], r.T1[i]));
  }
  // Uniform spacing: composite Simpson; otherwise trapezoid.
  const double h0 = r.params[1] - r.params[0];
  bool uniform = true;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (std::fabs(r.params[i + 1] - r.params[i] - h0) > 1e-9 * std::fabs(h0)) {
      uniform = false;
      break;
    }
  }
  if (uniform) return composite_simpson(f, h0);
  CompensatedSum s;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    s += 0.5 * (f[i] + f[i + 1]) * (r.params[i + 1] - r.params[i]);
  }
  return s.result();
}

double delta_writhe_smooth(const ParametricCurve& x0, const ParametricCurve& x1,
                           int samples, int lambda_levels) {
  if (samples < 16) throw std::invalid_argument("delta_writhe_smooth: samples >= 16");
  const double P0 = x0.period(), P1 = x1.period();

  // Sampled hypothesis check on the straight-line homotopy
  // X_lambda(u) = (1-lambda) x0(u P0) + lambda x1(u P1).
  const int hgrid = std::max(128, samples / 4);
  for (int j = 0; j <= lambda_levels; ++j) {
    const double lam = static_cast<double>(j) / lambda_levels;
    for (int i = 0; i < hgrid; ++i) {
      const double u = static_cast<double>(i) / hgrid;
      const Vec3 d = x0.jet(u * P0).d[0] * ((1.0 - lam) * P0) +
                     x1.jet(u * P1).d[0] * (lam * P1);
      const double speed = d.norm();
      if (speed < 1e-9 * std::min(P0, P1)) {
        std::ostringstream os;
        os << "delta_writhe_smooth: homotopy irregular at (t=" << u << ", lambda=" << lam
           << ")";
        throw std::domain_error(os.str());
      }
      const UnitVec3 tl(d);
      if (nearly_antipodal(tl, x1.tangent(u * P1))) {
        std::ostringstream os;
        os << "delta_writhe_smooth: antipodal tangents at (t=" << u
           << ", lambda=" << lam << ")";
        throw std::domain_error(os.str());
      }
    }
  }

  // Closed ribbon over the common domain u in [0, 1]; derivatives by the
  // chain rule. One duplicated endpoint keeps the Simpson count odd.
  const int m = samples + (samples % 2 == 0 ? 1 : 0);
  RibbonSampling r;
  r.params.reserve(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    const double u = static_cast<double>(i) / m;
    r.params.push_back(u);
    r.T0.push_back(x0.tangent(u * P0));
    r.T1.push_back(x1.tangent(u * P1));
    r.T0p.push_back(x0.tangent_derivative(u * P0) * P0);
    r.T1p.push_back(x1.tangent_derivative(u * P1) * P1);
  }
  return ribbon_area(r) / kTwoPi;
}

CornerDecomposition delta_writhe_polygonal(const ParametricCurve& x0,
                                           const PolygonalCurve& x1,
                                           int samples_per_span) {
  if (!x1.has_params()) {
    throw std::invalid_argument(
        "delta_writhe_polygonal: polygon must record inscription parameters");
  }
  if (samples_per_span < 4) {
    throw std::invalid_argument("delta_writhe_polygonal: samples_per_span >= 4");
  }
  const int n = x1.size();
  const auto& params = x1.params();
  const double period = x0.period();

  // Hypotheses of the extended formula, named per corner/parameter.
  for (int i = 0; i < n; ++i) {
    const double ca = x1.corner_angle(i);
    if (!(ca > M_PI / 2)) {
      std::ostringstream os;
      os << "delta_writhe_polygonal: corner angle " << ca << " at vertex " << i
         << " is not strictly greater than pi/2";
      throw std::domain_error(os.str());
    }
  }
  for (int i = 0; i < n; ++i) {
    const double t0 = params[static_cast<std::size_t>(i)];
    const double t1 =
        (i + 1 < n) ? params[static_cast<std::size_t>(i + 1)] : params[0] + period;
    const UnitVec3 edge = x1.edge_tangent(i);
    for (int k = 0; k <= 8; ++k) {
      const double t = t0 + (t1 - t0) * k / 8;
      const double ang = angle_between(x0.tangent(t), edge);
      if (!(ang < M_PI / 2)) {
        std::ostringstream os;
        os << "delta_writhe_polygonal: tangent angle " << ang << " at t=" << t
           << " (edge " << i << ") is not less than pi/2";
        throw std::domain_error(os.str());
      }
    }
  }

  CornerDecomposition out;
  out.region_areas.assign(static_cast<std::size_t>(n), 0.0);
  out.triangle_areas.assign(static_cast<std::size_t>(n), 0.0);
  constexpr int kGeoPoints = 8;

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < n; ++i) {
    const double t0 = params[static_cast<std::size_t>(i)];
    const double t1 =
        (i + 1 < n) ? params[static_cast<std::size_t>(i + 1)] : params[0] + period;
    const UnitVec3 tan1 = x1.edge_tangent(i);
    const UnitVec3 tan0_a = x0.tangent(t0);
    const UnitVec3 tan0_b = x0.tangent(t1);

    // Ribbon-oriented region between the T0 arc over the span and the edge
    // tangent: the loop below follows the T0 arc forward; the ribbon
    // orientation counts it with the opposite sign.
    std::vector<UnitVec3> loop;
    loop.reserve(static_cast<std::size_t>(2 * kGeoPoints + samples_per_span + 1));
    auto geo1 = geodesic_points(tan1, tan0_a, kGeoPoints);
    loop.insert(loop.end(), geo1.begin(), geo1.end() - 1);
    for (int k = 0; k < samples_per_span; ++k) {
      loop.push_back(x0.tangent(t0 + (t1 - t0) * k / samples_per_span));
    }
    auto geo2 = geodesic_points(tan0_b, tan1, kGeoPoints);
    loop.insert(loop.end(), geo2.begin(), geo2.end() - 1);
    out.region_areas[static_cast<std::size_t>(i)] =
        -signed_polygon_area(SphericalPolygon{std::move(loop)});

    out.triangle_areas[static_cast<std::size_t>(i)] = signed_triangle_area(
        x0.tangent(t0), x1.edge_tangent(i - 1), x1.edge_tangent(i));
  }

  CompensatedSum total;
  for (int i = 0; i < n; ++i) {
    total += out.region_areas[static_cast<std::size_t>(i)];
    total += out.triangle_areas[static_cast<std::size_t>(i)];
  }
  out.total = total.result() / kTwoPi;
  return out;
}

HypothesisReport check_hypotheses(const ParametricCurve& x0, const PolygonalCurve& x1,
                                  int grid, double tube_radius) {
  HypothesisReport rep;
  const int n = x1.size();

  rep.min_corner_angle = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    rep.min_corner_angle = std::min(rep.min_corner_angle, x1.corner_angle(i));
  }
  rep.corner_angles_pass = rep.min_corner_angle > M_PI / 2;

  const DerivativeBounds est = estimate_derivative_bounds(x0, std::max(grid, 256));
  rep.B2 = est.B2;
  rep.max_edge = max_edge_length(x1);
  rep.edge_length_pass = 1.0 / rep.max_edge > 5.0 * rep.B2;

  rep.max_tangent_angle = 0.0;
  if (x1.has_params()) {
    const auto& params = x1.params();
    const double period = x0.period();
    for (int i = 0; i < n; ++i) {
      const double t0 = params[static_cast<std::size_t>(i)];
      const double t1 =
          (i + 1 < n) ? params[static_cast<std::size_t>(i + 1)] : params[0] + period;
      const UnitVec3 edge = x1.edge_tangent(i);
      const int per_edge = std::max(2, grid / n);
      for (int k = 0; k <= per_edge; ++k) {
        const double t = t0 + (t1 - t0) * k / per_edge;
        rep.max_tangent_angle =
            std::max(rep.max_tangent_angle, angle_between(x0.tangent(t), edge));
      }
    }
  } else {
    // Without recorded parameters, fall back to nearest-vertex pairing.
    for (int g = 0; g < grid; ++g) {
      const double t = x0.period() * g / grid;
      const Vec3 pos = x0.position(t);
      int best = 0;
      double bestd = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        const double d = (x1.vertex(i) - pos).norm();
        if (d < bestd) {
          bestd = d;
          best = i;
        }
      }
      rep.max_tangent_angle = std::max(
          rep.max_tangent_angle, angle_between(x0.tangent(t), x1.edge_tangent(best)));
    }
  }
  rep.tangent_angle_pass = rep.max_tangent_angle < M_PI / 2;

  const double K = 2.0 * rep.B2;
  rep.lemma2_bound = 0.51005 * K * rep.max_edge;
  rep.lemma2_pass = rep.max_tangent_angle < rep.lemma2_bound;

  const double tube = tube_radius > 0.0 ? tube_radius : sampled_tube_radius(x0);
  if (x1.has_params()) {
    rep.ribbon = ribbon_embedded_heuristic(x0, x1, tube, std::max(grid, 256));
  } else {
    rep.ribbon.pass = false;
    rep.ribbon.tube_radius = tube;
    rep.ribbon.max_deviation = std::numeric_limits<double>::quiet_NaN();
  }
  return rep;
}

}  // namespace wr
