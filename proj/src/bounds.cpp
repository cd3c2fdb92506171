#include "wr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace wr {

void DerivativeBounds::validate() const {
  if (!(B1 >= 1.0)) throw std::invalid_argument("DerivativeBounds: B1 >= 1 required");
  if (!(B2 > 0.0 && B3 >= 0.0 && B4 >= 0.0)) {
    throw std::invalid_argument("DerivativeBounds: B2 > 0 and B3, B4 >= 0 required");
  }
}

ArclengthBounds arclength_bounds(const DerivativeBounds& b) {
  b.validate();
  ArclengthBounds a;
  a.K = 2.0 * b.B2;
  a.T = 2.0 * b.B3 + 10.0 * b.B2 * b.B2;
  const double B1 = b.B1, B2 = b.B2, B3 = b.B3, B4 = b.B4;
  const double g2 = B2 * B2 + B1 * B3 + B1 * B2 * B2;
  const double g3 = 3.0 * B2 * B3 + B1 * B4 + (B2 * B2 + B1 * B3) * B2 +
                    2.0 * B1 * B2 * (B2 * B2 + B1 * B3) + 3.0 * B1 * B1 * B2 * B2 * B2;
  const double t3 = g2 + 3.0 * B2 * B2;
  const double t4 = g3 + 10.0 * B2 * g2 + 15.0 * B2 * B2 * B2;
  a.B4p = B4 + 6.0 * B3 * B2 + B2 * (3.0 * B2 * B2 + 4.0 * t3) + B1 * t4;
  return a;
}

ErrorCertificate error_bound(long n, double x, const DerivativeBounds& b) {
  if (n < 3) throw std::invalid_argument("error_bound: n >= 3 required");
  if (!(x > 0.0)) throw std::invalid_argument("error_bound: x > 0 required");
  b.validate();
  ErrorCertificate cert;
  cert.n = n;
  cert.x = x;
  cert.alpha = b.B2 * (5.0 * b.B2 * b.B2 + b.B3);
  cert.bound = cert.alpha * static_cast<double>(n) * x * x * x;
  HypothesisCheck edge{"1/x > 5*B2", 1.0 / x > 5.0 * b.B2, 1.0 / x, 5.0 * b.B2};
  cert.hypotheses.push_back(edge);
  cert.valid = edge.pass;
  return cert;
}

ErrorCertificate regional_error_bound(const std::vector<RegionSpec>& regions) {
  if (regions.empty()) throw std::invalid_argument("regional_error_bound: no regions");
  ErrorCertificate cert;
  cert.valid = true;
  double bound = 0.0;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const RegionSpec& r = regions[i];
    ErrorCertificate::Region reg;
    reg.n = r.n;
    reg.x = r.x;
    reg.B2 = r.bounds.B2;
    reg.B3 = r.bounds.B3;
    reg.planar = r.planar;
    if (r.planar) {
      // Planar regions contribute nothing to the bound.
      reg.alpha = 0.0;
      reg.bound = 0.0;
      reg.pass = true;
    } else {
      r.bounds.validate();
      if (!(r.x > 0.0) || r.n < 1) {
        throw std::invalid_argument("regional_error_bound: bad region data");
      }
      reg.alpha = r.bounds.B2 * (5.0 * r.bounds.B2 * r.bounds.B2 + r.bounds.B3);
      reg.bound = reg.alpha * static_cast<double>(r.n) * r.x * r.x * r.x;
      reg.pass = 1.0 / r.x > 5.0 * r.bounds.B2;
      std::ostringstream os;
      os << "region " << i << ": 1/x > 5*B2";
      cert.hypotheses.push_back(
          {os.str(), reg.pass, 1.0 / r.x, 5.0 * r.bounds.B2});
    }
    bound += reg.bound;
    cert.n += r.n;
    cert.x = std::max(cert.x, r.x);
    cert.valid = cert.valid && reg.pass;
    cert.regions.push_back(reg);
  }
  cert.bound = bound;
  cert.alpha = 0.0;  // heterogeneous; see per-region entries
  return cert;
}

// ---------------------------------------------------------------------------
// Planar runs
// ---------------------------------------------------------------------------

namespace {

// Largest-deviation test against the best-fit plane of a vertex run.
// Plane from the centroid and the smallest principal direction (Jacobi).
bool run_is_coplanar(const PolygonalCurve& p, int start, int count, double tolerance) {
  if (count <= 3) return true;
  Vec3 centroid{0, 0, 0};
  for (int k = 0; k < count; ++k) centroid += p.vertex(start + k);
  centroid = centroid / count;
  double cov[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  double diam2 = 0.0;
  for (int k = 0; k < count; ++k) {
    const Vec3 d = p.vertex(start + k) - centroid;
    const double comp[3] = {d.x, d.y, d.z};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) cov[i][j] += comp[i] * comp[j];
    diam2 = std::max(diam2, d.norm2());
  }
  // Jacobi eigenvalue sweep for the 3x3 symmetric covariance.
  double v[3][3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int sweep = 0; sweep < 24; ++sweep) {
    int pq[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    double off = 0.0;
    for (auto& ij : pq) off += cov[ij[0]][ij[1]] * cov[ij[0]][ij[1]];
    if (off < 1e-30 * (cov[0][0] + cov[1][1] + cov[2][2] + 1e-300)) break;
    for (auto& ij : pq) {
      const int i = ij[0], j = ij[1];
      if (std::fabs(cov[i][j]) < 1e-300) continue;
      const double theta = 0.5 * std::atan2(2.0 * cov[i][j], cov[i][i] - cov[j][j]);
      const double c = std::cos(theta), s = std::sin(theta);
      for (int k = 0; k < 3; ++k) {
        const double aik = cov[i][k], ajk = cov[j][k];
        cov[i][k] = c * aik + s * ajk;
        cov[j][k] = -s * aik + c * ajk;
      }
      for (int k = 0; k < 3; ++k) {
        const double aki = cov[k][i], akj = cov[k][j];
        cov[k][i] = c * aki + s * akj;
        cov[k][j] = -s * aki + c * akj;
      }
      for (int k = 0; k < 3; ++k) {
        const double vki = v[k][i], vkj = v[k][j];
        v[k][i] = c * vki + s * vkj;
        v[k][j] = -s * vki + c * vkj;
      }
    }
  }
  int imin = 0;
  for (int i = 1; i < 3; ++i) {
    if (cov[i][i] < cov[imin][imin]) imin = i;
  }
  const Vec3 normal{v[0][imin], v[1][imin], v[2][imin]};
  const double nn = normal.norm();
  if (nn < 0.5) return true;  // degenerate run (collinear)
  const double tol = tolerance * 2.0 * std::sqrt(diam2);
  for (int k = 0; k < count; ++k) {
    if (std::fabs(dot(p.vertex(start + k) - centroid, normal) / nn) > tol) return false;
  }
  return true;
}

}  // namespace

std::vector<PlanarRun> detect_planar_runs(const PolygonalCurve& p, double tolerance) {
  const int n = p.size();
  if (run_is_coplanar(p, 0, n, tolerance)) return {{0, n}};

  // Maximal extension from every start, then drop runs cyclically contained
  // in another.
  std::vector<PlanarRun> candidates;
  for (int i = 0; i < n; ++i) {
    int count = 3;
    while (count < n && run_is_coplanar(p, i, count + 1, tolerance)) ++count;
    if (count >= 4) candidates.push_back({i, count});
  }
  // A run is absorbed by a longer one when all but at most one of its
  // vertices lie inside it (a collinear straight segment plus one stray
  // vertex spans a plane, which would otherwise spawn spurious overlaps).
  auto outside_count = [n](const PlanarRun& big, const PlanarRun& small) {
    int outside = 0;
    for (int k = 0; k < small.count; ++k) {
      const int idx = (small.start + k) % n;
      const int offset = ((idx - big.start) % n + n) % n;
      if (offset >= big.count) ++outside;
    }
    return outside;
  };
  std::vector<PlanarRun> runs;
  for (const auto& cand : candidates) {
    bool absorbed = false;
    for (const auto& other : candidates) {
      if (other.start == cand.start && other.count == cand.count) continue;
      const bool longer = other.count > cand.count ||
                          (other.count == cand.count && other.start < cand.start);
      if (longer && outside_count(other, cand) <= 1) {
        absorbed = true;
        break;
      }
    }
    if (!absorbed) runs.push_back(cand);
  }
  return runs;
}

// ---------------------------------------------------------------------------
// Lemma checks
// ---------------------------------------------------------------------------

namespace {

void require_unit_speed(const ParametricCurve& c) {
  for (int i = 0; i < 64; ++i) {
    const double t = c.period() * i / 64;
    if (std::fabs(c.jet(t).d[0].norm() - 1.0) > 1e-6) {
      throw std::invalid_argument("lemma check: curve must be unit-speed (arclength)");
    }
  }
}

double default_K(const ParametricCurve& c) {
  // Sampled curvature bound with the same 1.05 inflation as the B estimates.
  double kmax = 0.0;
  for (int i = 0; i < 1024; ++i) {
    const CurveJet j = c.jet(c.period() * i / 1024);
    const double n1 = j.d[0].norm();
    kmax = std::max(kmax, cross(j.d[0], j.d[1]).norm() / (n1 * n1 * n1));
  }
  return 1.05 * kmax;
}

}  // namespace

LemmaReport lemma_chord_bounds(const ParametricCurve& c, double span, double K, int grid) {
  if (!(span > 0.0)) throw std::invalid_argument("lemma_chord_bounds: span > 0");
  require_unit_speed(c);
  if (K <= 0.0) K = default_K(c);
  if (!(1.0 / span > 2.5 * K)) {
    std::ostringstream os;
    os << "lemma_chord_bounds: regime violation, need 1/span > (5/2)K, got 1/span="
       << 1.0 / span << " vs " << 2.5 * K;
    throw std::domain_error(os.str());
  }
  double max_deficit = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid; ++i) {
    const double s0 = c.period() * i / grid;
    const double chord = (c.position(s0 + span) - c.position(s0)).norm();
    max_deficit = std::max(max_deficit, span - chord);
  }
  max_deficit = std::max(max_deficit, 0.0);
  LemmaReport r;
  r.max_observed = max_deficit;
  r.bound = K * K / 24.0 * span * span * span + std::pow(span, 5) / 120.0;
  r.margin = r.bound - r.max_observed;
  r.pass = r.margin >= 0.0;
  std::ostringstream os;
  os << "span=" << span << " K=" << K;
  r.detail = os.str();
  return r;
}

LemmaReport lemma_tangent_angle(const ParametricCurve& c, const PolygonalCurve& p,
                                double K, int samples_per_edge) {
  if (!p.has_params()) {
    throw std::invalid_argument("lemma_tangent_angle: inscription parameters required");
  }
  require_unit_speed(c);
  if (K <= 0.0) K = default_K(c);
  const double x = max_edge_length(p);
  if (!(1.0 / x > 2.5 * K)) {
    std::ostringstream os;
    os << "lemma_tangent_angle: regime violation, need 1/x > (5/2)K, got 1/x="
       << 1.0 / x << " vs " << 2.5 * K;
    throw std::domain_error(os.str());
  }
  const auto& params = p.params();
  const int n = p.size();
  double max_angle = 0.0;
  double max_span = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t0 = params[static_cast<std::size_t>(i)];
    const double t1 = (i + 1 < n) ? params[static_cast<std::size_t>(i + 1)]
                                  : params[0] + c.period();
    max_span = std::max(max_span, t1 - t0);
    const UnitVec3 edge = p.edge_tangent(i);
    for (int k = 0; k <= samples_per_edge; ++k) {
      const double t = t0 + (t1 - t0) * k / samples_per_edge;
      max_angle = std::max(max_angle, angle_between(c.tangent(t), edge));
    }
  }
  LemmaReport r;
  r.max_observed = max_angle;
  r.bound = 0.51005 * K * x;
  r.margin = r.bound - r.max_observed;
  r.pass = r.margin >= 0.0;
  std::ostringstream os;
  os << "x=" << x << " K=" << K << " max_param_span=" << max_span
     << " (1.01x=" << 1.01 * x << ")";
  r.detail = os.str();
  return r;
}

// ---------------------------------------------------------------------------
// Ribbon heuristic and estimates
// ---------------------------------------------------------------------------

RibbonVerdict ribbon_embedded_heuristic(const ParametricCurve& c, const PolygonalCurve& p,
                                        double tube_radius, int grid) {
  if (!p.has_params()) {
    throw std::invalid_argument("ribbon_embedded_heuristic: inscription parameters required");
  }
  const auto& params = p.params();
  const int n = p.size();
  double maxdev = 0.0;
  for (int g = 0; g < grid; ++g) {
    const double t = params[0] + c.period() * g / grid;
    // Locate the containing span.
    int lo = 0, hi = n;  // span index in [0, n)
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      const double tm = params[static_cast<std::size_t>(mid)];
      if (tm <= t) lo = mid; else hi = mid;
    }
    const double t0 = params[static_cast<std::size_t>(lo)];
    const double t1 = (lo + 1 < n) ? params[static_cast<std::size_t>(lo + 1)]
                                   : params[0] + c.period();
    const double a = (t - t0) / (t1 - t0);
    const Vec3 pn = p.vertex(lo) * (1.0 - a) + p.vertex(lo + 1) * a;
    maxdev = std::max(maxdev, (pn - c.position(t)).norm());
  }
  RibbonVerdict v;
  v.max_deviation = maxdev;
  v.tube_radius = tube_radius;
  v.pass = maxdev < tube_radius;
  return v;
}

double sampled_tube_radius(const ParametricCurve& c, int grid) {
  double kmax = 0.0;
  std::vector<Vec3> pts;
  pts.reserve(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    const CurveJet j = c.jet(c.period() * i / grid);
    const double n1 = j.d[0].norm();
    kmax = std::max(kmax, cross(j.d[0], j.d[1]).norm() / (n1 * n1 * n1));
    pts.push_back(j.p);
  }
  double min_far = std::numeric_limits<double>::infinity();
  const int gap = std::max(2, grid / 20);  // skip parameter-nearby pairs
  for (int i = 0; i < grid; ++i) {
    for (int j = i + gap; j < grid && j - i <= grid - gap; ++j) {
      min_far = std::min(min_far,
                         (pts[static_cast<std::size_t>(i)] - pts[static_cast<std::size_t>(j)]).norm());
    }
  }
  const double r_curv = kmax > 0.0 ? 1.0 / kmax : std::numeric_limits<double>::infinity();
  return std::min(r_curv, 0.5 * min_far);
}

DerivativeBounds estimate_derivative_bounds(const ParametricCurve& c, int grid) {
  double m[4] = {0, 0, 0, 0};
  for (int i = 0; i < grid; ++i) {
    const CurveJet j = c.jet(c.period() * i / grid);
    for (int k = 0; k < 4; ++k) {
      const double nk = j.d[static_cast<std::size_t>(k)].norm();
      if (!std::isfinite(nk)) {
        std::ostringstream os;
        os << "estimate_derivative_bounds: non-finite derivative " << (k + 1)
           << " at t=" << c.period() * i / grid;
        throw std::domain_error(os.str());
      }
      m[k] = std::max(m[k], nk);
    }
  }
  DerivativeBounds b;
  b.B1 = std::max(1.0, m[0]);  // |C'| >= 1 already; no inflation needed
  b.B2 = 1.05 * m[1];
  b.B3 = 1.05 * m[2];
  b.B4 = 1.05 * m[3];
  b.provenance = DerivativeBounds::Provenance::kEstimated;
  return b;
}

}  // namespace wr
