#include "wr/writhe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wr/summation.hpp"

namespace wr {

namespace {

constexpr double kFourPi = 4.0 * M_PI;

double cyclic_distance(double a, double b, double period) {
  double d = std::fabs(a - b);
  return std::min(d, period - d);
}

// Raw Gauss integrand in a shared form for smooth and piecewise curves.
struct GaussIntegrand {
  std::function<CurveJet(double)> jet;
  double period;
  double halfwidth;

  double operator()(double s, double t) const {
    if (cyclic_distance(s, t, period) <= halfwidth) return 0.0;
    const CurveJet a = jet(s), b = jet(t);
    const Vec3 diff = a.p - b.p;
    const double dn = diff.norm();
    if (dn == 0.0) return 0.0;
    return triple(a.d[0], b.d[0], diff) / (dn * dn * dn);
  }
};

// Integrates the Gauss integrand over diagonal blocks (counted once) and
// upper-triangle blocks (counted twice via symmetry), returning 4pi * Wr.
double gauss_double_integral(const GaussIntegrand& f, std::vector<Rect> diag,
                             std::vector<Rect> upper, const QuadratureSpec& q,
                             const char* who) {
  // Rough magnitude for the absolute tolerance: 3x3 Gauss per block.
  auto rough_abs = [&](const std::vector<Rect>& rects) {
    double acc = 0.0;
    static const double x3[] = {0.0, 0.7745966692414834};
    static const double w3[] = {0.8888888888888888, 0.5555555555555556};
    for (const auto& r : rects) {
      const double ms = 0.5 * (r.s0 + r.s1), hs = 0.5 * (r.s1 - r.s0);
      const double mt = 0.5 * (r.t0 + r.t1), ht = 0.5 * (r.t1 - r.t0);
      const double ns[3] = {ms, ms + hs * x3[1], ms - hs * x3[1]};
      const double nt[3] = {mt, mt + ht * x3[1], mt - ht * x3[1]};
      const double ws[3] = {w3[0], w3[1], w3[1]};
      double blk = 0.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) blk += ws[i] * ws[j] * std::fabs(f(ns[i], nt[j]));
      acc += blk * hs * ht;
    }
    return acc;
  };
  const double magnitude =
      std::max(rough_abs(diag) + 2.0 * rough_abs(upper), 0.05 * kFourPi);
  const double abs_total = q.rel_tolerance * magnitude;

  double value = 0.0, err = 0.0;
  bool failed = false;
  std::string detail;
  auto run = [&](std::vector<Rect> seeds, double tol, double weight) {
    if (seeds.empty()) return;
    try {
      QuadResult r = integrate2d_adaptive([&f](double s, double t) { return f(s, t); },
                                          std::move(seeds), tol, q.max_subdivisions);
      value += weight * r.value;
      err += weight * r.error_estimate;
    } catch (const ConvergenceError& e) {
      value += weight * e.best_estimate();
      err += weight * e.error_indicator();
      failed = true;
      detail = e.what();
    }
  };
  run(std::move(diag), 0.3 * abs_total, 1.0);
  run(std::move(upper), 0.35 * abs_total, 2.0);
  if (failed) {
    std::ostringstream os;
    os << who << ": tolerance not reached (" << detail << ")";
    throw ConvergenceError(os.str(), value / kFourPi, err / kFourPi);
  }
  return value;
}

std::vector<double> block_boundaries(const ParametricCurve& c, int min_blocks) {
  std::vector<double> b;
  b.push_back(0.0);
  for (double t : c.breakpoints()) {
    if (t > 1e-12 && t < c.period() - 1e-12) b.push_back(t);
  }
  b.push_back(c.period());
  std::sort(b.begin(), b.end());
  // Refine so no interval exceeds period / min_blocks.
  const double maxw = c.period() / min_blocks;
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double lo = b[i], hi = b[i + 1];
    const int parts = std::max(1, static_cast<int>(std::ceil((hi - lo) / maxw)));
    for (int k = 0; k < parts; ++k) out.push_back(lo + (hi - lo) * k / parts);
  }
  out.push_back(c.period());
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polygonal writhe
// ---------------------------------------------------------------------------

namespace {

void require_simple(const PolygonalCurve& p, const char* who) {
  if (auto bad = p.find_self_intersection()) {
    std::ostringstream os;
    os << who << ": polygon is not simple; edges " << bad->i << " and " << bad->j
       << " intersect";
    throw std::domain_error(os.str());
  }
}

}  // namespace

double writhe_polygonal_serial(const PolygonalCurve& p) {
  require_simple(p, "writhe_polygonal");
  const int n = p.size();
  CompensatedSum sum;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      sum += detail::edge_pair_solid_angle_unchecked(p.vertex(i), p.vertex(i + 1),
                                                     p.vertex(j), p.vertex(j + 1));
    }
  }
  return 2.0 * sum.result() / kFourPi;
}

double writhe_polygonal(const PolygonalCurve& p) {
  require_simple(p, "writhe_polygonal");
  const int n = p.size();
#ifdef _OPENMP
  const int nthreads = omp_get_max_threads();
  std::vector<CompensatedSum> partial(static_cast<std::size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
  {
    const int tid = omp_get_thread_num();
    CompensatedSum local;
#pragma omp for schedule(static, 8)
    for (int i = 0; i < n; ++i) {
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        local += detail::edge_pair_solid_angle_unchecked(p.vertex(i), p.vertex(i + 1),
                                                         p.vertex(j), p.vertex(j + 1));
      }
    }
    partial[static_cast<std::size_t>(tid)] = local;
  }
  CompensatedSum sum;
  for (const auto& part : partial) sum.merge(part);
  return 2.0 * sum.result() / kFourPi;
#else
  return writhe_polygonal_serial(p);
#endif
}

// ---------------------------------------------------------------------------
// Smooth / piecewise quadrature
// ---------------------------------------------------------------------------

double writhe_smooth_quadrature(const ParametricCurve& c, const QuadratureSpec& q) {
  const double period = c.period();
  GaussIntegrand f{[&c](double t) { return c.jet(t); }, period,
                   q.diagonal_halfwidth >= 0.0 ? q.diagonal_halfwidth : period * 1e-6};
  const std::vector<double> b = block_boundaries(c, 16);
  std::vector<Rect> diag, upper;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    for (std::size_t j = i; j + 1 < b.size(); ++j) {
      Rect r{b[i], b[i + 1], b[j], b[j + 1]};
      (j == i ? diag : upper).push_back(r);
    }
  }
  return gauss_double_integral(f, std::move(diag), std::move(upper), q,
                               "writhe_smooth_quadrature") /
         kFourPi;
}

double writhe_piecewise_quadrature(const PiecewiseCurve& c, const QuadratureSpec& q) {
  const double period = c.period();
  GaussIntegrand f{[&c](double t) { return c.jet(t); }, period,
                   q.diagonal_halfwidth >= 0.0 ? q.diagonal_halfwidth : period * 1e-6};
  const auto& segs = c.segments();
  const auto& offs = c.offsets();
  const std::size_t m = segs.size();

  // A segment pair contributes nothing when all of it lies in one plane.
  auto coplanar_pair = [&](std::size_t k, std::size_t l) {
    std::vector<Vec3> pts;
    for (std::size_t idx : {k, l}) {
      const auto& s = segs[idx];
      if (!s.planar) return false;
      for (double f0 : {0.0, 0.37, 0.71, 1.0}) pts.push_back(s.eval(f0 * s.length).p);
    }
    const Vec3 origin = pts[0];
    Vec3 e1{0, 0, 0};
    double best = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if ((pts[i] - origin).norm() > best) {
        best = (pts[i] - origin).norm();
        e1 = pts[i] - origin;
      }
    }
    if (best == 0.0) return true;
    Vec3 nrm{0, 0, 0};
    double bestn = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const Vec3 cr = cross(e1, pts[i] - origin);
      if (cr.norm() > bestn) {
        bestn = cr.norm();
        nrm = cr;
      }
    }
    if (bestn < 1e-12 * best * best) return true;  // collinear points
    nrm = nrm.normalized();
    double scale = best;
    for (const auto& pt : pts) {
      if (std::fabs(dot(pt - origin, nrm)) > 1e-10 * scale) return false;
    }
    return true;
  };

  std::vector<Rect> diag, upper;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = k; l < m; ++l) {
      if (k == l && segs[k].planar) continue;  // planar self-block integrand is 0
      if (coplanar_pair(k, l)) continue;       // includes coplanar straight-straight
      Rect r{offs[k], offs[k] + segs[k].length, offs[l], offs[l] + segs[l].length};
      (k == l ? diag : upper).push_back(r);
    }
  }
  return gauss_double_integral(f, std::move(diag), std::move(upper), q,
                               "writhe_piecewise_quadrature") /
         kFourPi;
}

// ---------------------------------------------------------------------------
// Linking number
// ---------------------------------------------------------------------------

LinkingResult linking_number(const PolygonalCurve& a, const PolygonalCurve& b) {
  const int na = a.size(), nb = b.size();
  const double tol = 1e-9 * std::max(a.diameter(), b.diameter());
  double mind = std::numeric_limits<double>::infinity();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(min : mind)
#endif
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      const double d =
          segment_distance(a.vertex(i), a.vertex(i + 1), b.vertex(j), b.vertex(j + 1));
      mind = std::min(mind, d);
    }
  }
  if (mind < tol) throw std::domain_error("linking_number: curves intersect");

#ifdef _OPENMP
  const int nthreads = omp_get_max_threads();
  std::vector<CompensatedSum> partial(static_cast<std::size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
  {
    const int tid = omp_get_thread_num();
    CompensatedSum local;
#pragma omp for schedule(static, 8)
    for (int i = 0; i < na; ++i) {
      for (int j = 0; j < nb; ++j) {
        local += detail::edge_pair_solid_angle_unchecked(a.vertex(i), a.vertex(i + 1),
                                                         b.vertex(j), b.vertex(j + 1));
      }
    }
    partial[static_cast<std::size_t>(tid)] = local;
  }
  CompensatedSum sum;
  for (const auto& part : partial) sum.merge(part);
#else
  CompensatedSum sum;
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      sum += detail::edge_pair_solid_angle_unchecked(a.vertex(i), a.vertex(i + 1),
                                                     b.vertex(j), b.vertex(j + 1));
    }
  }
#endif
  LinkingResult r;
  r.raw = sum.result() / kFourPi;
  r.linking_number = std::lround(r.raw);
  r.residual = std::fabs(r.raw - static_cast<double>(r.linking_number));
  if (r.residual > 0.1) {
    std::ostringstream os;
    os << "linking_number: residual " << r.residual << " exceeds integrity guard 0.1";
    throw std::runtime_error(os.str());
  }
  return r;
}

// ---------------------------------------------------------------------------
// Twist
// ---------------------------------------------------------------------------

void FramedCurve::validate(int grid, double tol) const {
  if (base == nullptr || !normal) {
    throw std::invalid_argument("FramedCurve: missing base curve or normal field");
  }
  const double period = base->period();
  for (int i = 0; i < grid; ++i) {
    const double t = period * i / grid;
    const UnitVec3 v = normal(t);
    if (std::fabs(dot(v.vec(), base->tangent(t).vec())) > tol) {
      std::ostringstream os;
      os << "FramedCurve: normal not perpendicular to tangent at t=" << t;
      throw std::invalid_argument(os.str());
    }
  }
  const Vec3 v0 = normal(0.0).vec(), vp = normal(period).vec();
  if ((v0 - vp).norm() > 1e-6) {
    throw std::invalid_argument("FramedCurve: normal field not closed over the period");
  }
}

namespace {

double twist_at_density(const FramedCurve& f, int samples) {
  const double period = f.base->period();
  const double h = period * 1e-6;
  CompensatedSum acc;
  for (int i = 0; i < samples; ++i) {
    const double t = period * i / samples;
    const Vec3 v = f.normal(t).vec();
    const Vec3 vp = (f.normal(t + h).vec() - f.normal(t - h).vec()) / (2.0 * h);
    const Vec3 tt = f.base->tangent(t).vec();
    acc += dot(vp, cross(tt, v));
  }
  return acc.result() * (period / samples) / (2.0 * M_PI);
}

}  // namespace

double twist(const FramedCurve& f, int samples) {
  if (samples < 8) throw std::invalid_argument("twist: need >= 8 samples");
  f.validate();
  const double fine = twist_at_density(f, samples);
  const double coarse = twist_at_density(f, samples / 2);
  if (std::fabs(fine - coarse) > 1e-3 * std::max(1.0, std::fabs(fine))) {
    std::ostringstream os;
    os << "twist: Richardson check failed (" << coarse << " vs " << fine
       << "); increase samples";
    throw std::runtime_error(os.str());
  }
  return fine;
}

FramedCurve parallel_transport_frame(const ParametricCurve& c, int nodes) {
  if (nodes < 8) throw std::invalid_argument("parallel_transport_frame: nodes >= 8");
  const double period = c.period();
  std::vector<UnitVec3> tangents;
  tangents.reserve(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) tangents.push_back(c.tangent(period * i / nodes));

  // Seed normal: project the axis least aligned with T(0).
  const Vec3 t0 = tangents[0].vec();
  Vec3 seed{1, 0, 0};
  if (std::fabs(t0.y) < std::fabs(seed.dot(t0))) seed = {0, 1, 0};
  if (std::fabs(t0.z) < std::fabs(seed.dot(t0))) seed = {0, 0, 1};
  std::vector<Vec3> v(static_cast<std::size_t>(nodes));
  v[0] = (seed - t0 * dot(seed, t0)).normalized();
  auto transport = [](const Vec3& vec, const UnitVec3& from, const UnitVec3& to) {
    const Vec3 axis = cross(from, to);
    const double an = axis.norm();
    if (an < 1e-15) return vec;
    return rotate_about(vec, UnitVec3(axis), std::atan2(an, dot(from, to)));
  };
  for (int i = 1; i < nodes; ++i) {
    v[static_cast<std::size_t>(i)] = transport(v[static_cast<std::size_t>(i - 1)],
                                               tangents[static_cast<std::size_t>(i - 1)],
                                               tangents[static_cast<std::size_t>(i)]);
  }
  const Vec3 wrapped =
      transport(v[static_cast<std::size_t>(nodes - 1)],
                tangents[static_cast<std::size_t>(nodes - 1)], tangents[0]);
  // Signed holonomy angle from the transported vector back to the seed.
  const double holonomy = std::atan2(dot(cross(wrapped, v[0]), t0), dot(wrapped, v[0]));
  for (int i = 0; i < nodes; ++i) {
    v[static_cast<std::size_t>(i)] =
        rotate_about(v[static_cast<std::size_t>(i)], tangents[static_cast<std::size_t>(i)],
                     holonomy * i / nodes);
  }

  auto table = std::make_shared<std::vector<Vec3>>(std::move(v));
  const ParametricCurve* base = &c;
  FramedCurve f;
  f.base = base;
  f.normal = [table, base, nodes, period](double t) {
    double u = std::fmod(t, period);
    if (u < 0.0) u += period;
    const double x = u / period * nodes;
    const int i = std::min(static_cast<int>(x), nodes - 1);
    const double a = x - i;
    const Vec3 lin =
        (*table)[static_cast<std::size_t>(i)] * (1.0 - a) +
        (*table)[static_cast<std::size_t>((i + 1) % nodes)] * a;
    const Vec3 tan = base->tangent(t).vec();
    return UnitVec3(lin - tan * dot(lin, tan));
  };
  return f;
}

// ---------------------------------------------------------------------------
// Spherical-area writhe mod 2
// ---------------------------------------------------------------------------

double writhe_mod2_from_tantrix(const Tantrix& t) {
  const std::vector<UnitVec3> loop = densified_tantrix(t);
  if (loop.size() < 3) throw std::invalid_argument("writhe_mod2_from_tantrix: too few samples");
  for (std::size_t i = 0; i < loop.size(); ++i) {
    if (nearly_antipodal(loop[i], loop[(i + 1) % loop.size()])) {
      throw std::domain_error("writhe_mod2_from_tantrix: antipodal consecutive samples");
    }
  }
  // Fan from an apex clear of every sample's antipode; the apex choice only
  // shifts the area by multiples of 4*pi, which mod 2 ignores.
  const UnitVec3 candidates[] = {
      UnitVec3(0, 0, 1),  UnitVec3(0, 0, -1), UnitVec3(1, 0, 0),
      UnitVec3(0, 1, 0),  UnitVec3(1, 1, 1),  UnitVec3(-1, 1, 0.5),
  };
  const UnitVec3* apex = nullptr;
  double best_clearance = 0.0;
  for (const auto& cand : candidates) {
    double clearance = M_PI;
    for (const auto& v : loop) {
      clearance = std::min(clearance, M_PI - angle_between(cand, v));
    }
    if (clearance > best_clearance) {
      best_clearance = clearance;
      apex = &cand;
    }
  }
  if (apex == nullptr || best_clearance < 1e-6) {
    throw std::domain_error("writhe_mod2_from_tantrix: no antipode-free fan apex found");
  }
  const double area = signed_polygon_area_from(*apex, loop);
  double wr = std::fmod(area / (2.0 * M_PI) - 1.0, 2.0);
  if (wr < 0.0) wr += 2.0;
  return wr;
}

}  // namespace wr
