#include "wr/curves.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace wr {

namespace {

double wrap_param(double t, double period) {
  double u = std::fmod(t, period);
  if (u < 0.0) u += period;
  return u;
}

}  // namespace

// ---------------------------------------------------------------------------
// ParametricCurve
// ---------------------------------------------------------------------------

ParametricCurve::ParametricCurve(double period, Evaluator eval, Smoothness smoothness,
                                 bool analytic_derivatives,
                                 std::vector<double> breakpoints, std::string name)
    : period_(period),
      eval_(std::move(eval)),
      smoothness_(smoothness),
      analytic_(analytic_derivatives),
      breakpoints_(std::move(breakpoints)),
      name_(std::move(name)) {
  if (!(period_ > 0.0)) throw std::invalid_argument("ParametricCurve: period must be > 0");
  std::sort(breakpoints_.begin(), breakpoints_.end());
  validate_closure();
  validate_regularity();
}

CurveJet ParametricCurve::jet(double t) const { return eval_(wrap_param(t, period_)); }

Vec3 ParametricCurve::derivative(double t, int k) const {
  if (k < 1 || k > 4) throw std::invalid_argument("ParametricCurve::derivative: k in 1..4");
  return jet(t).d[static_cast<std::size_t>(k - 1)];
}

UnitVec3 ParametricCurve::tangent(double t) const { return UnitVec3(jet(t).d[0]); }

Vec3 ParametricCurve::tangent_derivative(double t) const {
  const CurveJet j = jet(t);
  const Vec3& d1 = j.d[0];
  const Vec3& d2 = j.d[1];
  const double n = d1.norm();
  return d2 / n - d1 * (dot(d1, d2) / (n * n * n));
}

void ParametricCurve::validate_closure(double tol) const {
  const CurveJet a = eval_(0.0);
  const CurveJet b = eval_(period_);
  auto check = [&](const Vec3& u, const Vec3& v, const char* what) {
    if ((u - v).norm() > tol * std::max(1.0, u.norm())) {
      throw std::invalid_argument(std::string("ParametricCurve: not closed in ") + what);
    }
  };
  check(a.p, b.p, "position");
  const char* names[4] = {"d1", "d2", "d3", "d4"};
  for (int k = 0; k < 4; ++k) {
    check(a.d[static_cast<std::size_t>(k)], b.d[static_cast<std::size_t>(k)], names[k]);
  }
}

void ParametricCurve::validate_regularity(int grid) const {
  for (int i = 0; i < grid; ++i) {
    const double t = period_ * i / grid;
    const Vec3 d1 = eval_(t).d[0];
    if (!d1.finite() || d1.norm() < 1.0 - 1e-9) {
      std::ostringstream os;
      os << "ParametricCurve: |C'| < 1 at t=" << t << " (" << d1.norm() << ")";
      throw std::invalid_argument(os.str());
    }
  }
}

ParametricCurve ParametricCurve::from_positions(double period,
                                                std::function<Vec3(double)> pos,
                                                Smoothness smoothness, std::string name) {
  const double h = period * 1e-4;
  auto wrapped = [pos, period](double t) { return pos(wrap_param(t, period)); };
  auto eval = [wrapped, h, period](double t) {
    t = wrap_param(t, period);  // identical samples at t = 0 and t = period
    auto d1_at = [&](double step) {
      return (wrapped(t + step) - wrapped(t - step)) / (2.0 * step);
    };
    auto d2_at = [&](double step) {
      return (wrapped(t + step) - wrapped(t) * 2.0 + wrapped(t - step)) / (step * step);
    };
    auto d3_at = [&](double step) {
      return (wrapped(t + 2 * step) - wrapped(t + step) * 2.0 + wrapped(t - step) * 2.0 -
              wrapped(t - 2 * step)) /
             (2.0 * step * step * step);
    };
    auto d4_at = [&](double step) {
      return (wrapped(t + 2 * step) - wrapped(t + step) * 4.0 + wrapped(t) * 6.0 -
              wrapped(t - step) * 4.0 + wrapped(t - 2 * step)) /
             (step * step * step * step);
    };
    auto richardson = [](const Vec3& coarse, const Vec3& fine) {
      return (fine * 4.0 - coarse) / 3.0;
    };
    CurveJet j;
    j.p = wrapped(t);
    j.d[0] = richardson(d1_at(h), d1_at(h / 2));
    j.d[1] = richardson(d2_at(h), d2_at(h / 2));
    j.d[2] = richardson(d3_at(h), d3_at(h / 2));
    j.d[3] = richardson(d4_at(h), d4_at(h / 2));
    return j;
  };
  return ParametricCurve(period, eval, smoothness, /*analytic=*/false, {}, std::move(name));
}

// ---------------------------------------------------------------------------
// PolygonalCurve
// ---------------------------------------------------------------------------

PolygonalCurve::PolygonalCurve(std::vector<Vec3> vertices, std::vector<double> params)
    : vertices_(std::move(vertices)), params_(std::move(params)) {
  const int n = size();
  if (n < 3) throw std::invalid_argument("PolygonalCurve: need >= 3 vertices");
  if (!params_.empty() && static_cast<int>(params_.size()) != n) {
    throw std::invalid_argument("PolygonalCurve: params size must match vertex count");
  }
  for (int i = 0; i < n; ++i) {
    if (!vertices_[static_cast<std::size_t>(i)].finite()) {
      throw std::invalid_argument("PolygonalCurve: non-finite vertex");
    }
    if (edge_length(i) <= 0.0) {
      std::ostringstream os;
      os << "PolygonalCurve: zero-length edge at vertex " << i;
      throw std::invalid_argument(os.str());
    }
  }
}

double PolygonalCurve::corner_angle(int i) const {
  return M_PI - angle_between(edge_tangent(i - 1), edge_tangent(i));
}

double PolygonalCurve::diameter() const {
  Vec3 lo = vertices_[0], hi = vertices_[0];
  for (const auto& v : vertices_) {
    lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
    hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
  }
  return (hi - lo).norm();
}

std::optional<PolygonalCurve::EdgePair>
PolygonalCurve::find_self_intersection(double rel_tol) const {
  const int n = size();
  const double tol = rel_tol * diameter();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // cyclically adjacent
      const double d = segment_distance(vertex(i), vertex(i + 1), vertex(j), vertex(j + 1));
      if (d < tol) return EdgePair{i, j};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// PiecewiseCurve
// ---------------------------------------------------------------------------

PiecewiseCurve::PiecewiseCurve(std::vector<CurveSegment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw std::invalid_argument("PiecewiseCurve: no segments");
  offsets_.reserve(segments_.size());
  for (const auto& s : segments_) {
    offsets_.push_back(total_);
    total_ += s.length;
  }
  // Junction continuity: position and tangent direction.
  double scale = 0.0;
  for (const auto& s : segments_) scale = std::max(scale, s.eval(0.0).p.norm());
  scale = std::max(scale, 1.0);
  const std::size_t m = segments_.size();
  for (std::size_t k = 0; k < m; ++k) {
    const CurveJet end = segments_[k].eval(segments_[k].length);
    const CurveJet next = segments_[(k + 1) % m].eval(0.0);
    if ((end.p - next.p).norm() > 1e-9 * scale) {
      throw std::invalid_argument("PiecewiseCurve: junction position gap");
    }
    const UnitVec3 t0(end.d[0]), t1(next.d[0]);
    if (angle_between(t0, t1) > 1e-10) {
      throw std::invalid_argument("PiecewiseCurve: junction tangent discontinuity");
    }
  }
}

CurveJet PiecewiseCurve::jet(double t) const {
  double u = wrap_param(t, total_);
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), u);
  std::size_t k = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return segments_[k].eval(u - offsets_[k]);
}

// ---------------------------------------------------------------------------
// Tantrix
// ---------------------------------------------------------------------------

Tantrix tantrix(const ParametricCurve& c, int samples) {
  if (samples < 3) throw std::invalid_argument("tantrix: need >= 3 samples");
  Tantrix t;
  t.polygonal = false;
  t.params.reserve(static_cast<std::size_t>(samples));
  t.samples.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double ti = c.period() * i / samples;
    const Vec3 d1 = c.jet(ti).d[0];
    if (d1.norm() == 0.0) {
      std::ostringstream os;
      os << "tantrix: zero derivative at t=" << ti;
      throw std::domain_error(os.str());
    }
    t.params.push_back(ti);
    t.samples.emplace_back(d1);
  }
  return t;
}

Tantrix tantrix(const PolygonalCurve& p) {
  Tantrix t;
  t.polygonal = true;
  const int n = p.size();
  t.samples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t.samples.push_back(p.edge_tangent(i));
  for (int i = 0; i < n; ++i) {
    if (nearly_antipodal(t.samples[static_cast<std::size_t>(i)],
                         t.samples[static_cast<std::size_t>((i + 1) % n)])) {
      std::ostringstream os;
      os << "tantrix: antipodal consecutive edge tangents at edge " << i;
      throw std::domain_error(os.str());
    }
  }
  return t;
}

std::vector<UnitVec3> densified_tantrix(const Tantrix& t, int arc_points) {
  if (!t.polygonal) return t.samples;
  std::vector<UnitVec3> loop;
  const std::size_t n = t.samples.size();
  loop.reserve(n * static_cast<std::size_t>(arc_points));
  for (std::size_t i = 0; i < n; ++i) {
    const auto arc = geodesic_points(t.samples[i], t.samples[(i + 1) % n],
                                     std::max(2, arc_points));
    loop.insert(loop.end(), arc.begin(), arc.end() - 1);  // drop duplicate endpoint
  }
  return loop;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

namespace {

// Planar racetrack closure: straight and arc pieces in the plane x = radius,
// described in in-plane coordinates (y, z).
struct PlanarPiece {
  bool is_arc;
  double length;
  // straight: start point and direction; arc: center, start tangent angle,
  // radius (traversed clockwise: tangent angle decreases).
  double px, pz;      // straight start / arc center
  double phi0;        // tangent angle at piece start
  double rho;         // arc radius
};

struct RacetrackClosure {
  std::vector<PlanarPiece> pieces;
  std::vector<double> offsets;
  double total = 0.0;

  void add_straight(double& py, double& pz, double& phi, double len) {
    pieces.push_back({false, len, py, pz, phi, 0.0});
    offsets.push_back(total);
    total += len;
    py += len * std::cos(phi);
    pz += len * std::sin(phi);
  }
  void add_arc(double& py, double& pz, double& phi, double phi_end, double rho) {
    const double dphi = phi_end - phi;  // negative (clockwise)
    const double ox = py + rho * std::sin(phi);
    const double oz = pz - rho * std::cos(phi);
    pieces.push_back({true, rho * (-dphi), ox, oz, phi, rho});
    offsets.push_back(total);
    total += rho * (-dphi);
    py = ox - rho * std::sin(phi_end);
    pz = oz + rho * std::cos(phi_end);
    phi = phi_end;
  }

  // In-plane jet at closure arclength sigma; returns (y, z) components.
  void jet(double sigma, double out_p[2], double out_d[4][2]) const {
    std::size_t k = pieces.size() - 1;
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
      if (sigma < offsets[i + 1]) {
        k = i;
        break;
      }
    }
    const PlanarPiece& pc = pieces[k];
    const double u = sigma - offsets[k];
    if (!pc.is_arc) {
      const double cy = std::cos(pc.phi0), cz = std::sin(pc.phi0);
      out_p[0] = pc.px + u * cy;
      out_p[1] = pc.pz + u * cz;
      out_d[0][0] = cy; out_d[0][1] = cz;
      for (int j = 1; j < 4; ++j) { out_d[j][0] = 0.0; out_d[j][1] = 0.0; }
      return;
    }
    const double phi = pc.phi0 - u / pc.rho;
    const double ny = std::sin(phi), nz = -std::cos(phi);   // right normal
    const double dy = std::cos(phi), dz = std::sin(phi);    // tangent
    out_p[0] = pc.px - pc.rho * ny;
    out_p[1] = pc.pz - pc.rho * nz;
    out_d[0][0] = dy;                 out_d[0][1] = dz;
    out_d[1][0] = ny / pc.rho;        out_d[1][1] = nz / pc.rho;
    const double r2 = pc.rho * pc.rho;
    out_d[2][0] = -dy / r2;           out_d[2][1] = -dz / r2;
    out_d[3][0] = -ny / (r2 * pc.rho); out_d[3][1] = -nz / (r2 * pc.rho);
  }
};

struct ClosedHelixData {
  double r, theta, w, Lh, L, shift;
  RacetrackClosure closure;
};

std::shared_ptr<ClosedHelixData> build_closed_helix(int turns, double radius,
                                                    double pitch_angle) {
  if (turns < 1) throw std::invalid_argument("closed_helix: turns must be >= 1");
  if (!(radius > 0.0)) throw std::invalid_argument("closed_helix: radius must be > 0");
  if (!(pitch_angle > 0.0 && pitch_angle < M_PI / 2)) {
    throw std::invalid_argument("closed_helix: pitch angle must be in (0, pi/2)");
  }
  auto d = std::make_shared<ClosedHelixData>();
  d->r = radius;
  d->theta = pitch_angle;
  const double c = std::cos(pitch_angle), s = std::sin(pitch_angle);
  d->w = c / radius;
  d->Lh = 2.0 * M_PI * turns * radius / c;
  const double h = d->Lh * s;

  const double rho = 2.5 * radius;
  const double L1 = 2.0 * radius, L4 = 2.0 * radius;
  const double L2 = h + L1 * s + L4;
  const double L3 = L1 * c;

  double py = 0.0, pz = h, phi = pitch_angle;
  auto& cl = d->closure;
  cl.add_straight(py, pz, phi, L1);
  cl.add_arc(py, pz, phi, -M_PI / 2, rho);
  cl.add_straight(py, pz, phi, L2);
  cl.add_arc(py, pz, phi, -M_PI, rho);
  cl.add_straight(py, pz, phi, L3);
  cl.add_arc(py, pz, phi, -1.5 * M_PI, rho);
  cl.add_straight(py, pz, phi, L4);
  cl.add_arc(py, pz, phi, pitch_angle - 2.0 * M_PI, rho);

  d->L = d->Lh + cl.total;
  d->shift = 0.5 * d->Lh;  // put t = 0 mid-helix so the period seam is smooth
  return d;
}

CurveJet closed_helix_jet(const ClosedHelixData& d, double t) {
  double u = std::fmod(t + d.shift, d.L);
  if (u < 0.0) u += d.L;
  CurveJet j;
  if (u <= d.Lh) {
    const double a = d.w * u;
    const double ca = std::cos(a), sa = std::sin(a);
    const double cth = std::cos(d.theta), sth = std::sin(d.theta);
    const double w = d.w;
    j.p = {d.r * ca, d.r * sa, u * sth};
    j.d[0] = {-cth * sa, cth * ca, sth};
    j.d[1] = {-cth * w * ca, -cth * w * sa, 0.0};
    j.d[2] = {cth * w * w * sa, -cth * w * w * ca, 0.0};
    j.d[3] = {cth * w * w * w * ca, cth * w * w * w * sa, 0.0};
    return j;
  }
  double p2[2], dv[4][2];
  d.closure.jet(u - d.Lh, p2, dv);
  j.p = {d.r, p2[0], p2[1]};
  for (int k = 0; k < 4; ++k) j.d[static_cast<std::size_t>(k)] = {0.0, dv[k][0], dv[k][1]};
  return j;
}

}  // namespace

ParametricCurve closed_helix(int turns, double radius, double pitch_angle) {
  auto data = build_closed_helix(turns, radius, pitch_angle);
  std::vector<double> breaks;
  breaks.push_back(std::fmod(data->Lh - data->shift + data->L, data->L));
  for (std::size_t i = 1; i < data->closure.offsets.size(); ++i) {
    breaks.push_back(
        std::fmod(data->Lh + data->closure.offsets[i] - data->shift + data->L, data->L));
  }
  breaks.push_back(std::fmod(data->L - data->shift + data->L, data->L));  // helix weld
  std::ostringstream name;
  name << "closed-helix turns=" << turns << " radius=" << radius
       << " pitch=" << pitch_angle;
  auto d = data;
  return ParametricCurve(
      d->L, [d](double t) { return closed_helix_jet(*d, t); }, Smoothness::kC1,
      /*analytic=*/true, std::move(breaks), name.str());
}

double closed_helix_exact_writhe(int turns, double pitch_angle) {
  return turns * (1.0 - std::sin(pitch_angle));
}

double closed_helix_length(int turns, double radius, double pitch_angle) {
  return build_closed_helix(turns, radius, pitch_angle)->L;
}

ParametricCurve circle(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle: radius must be > 0");
  const double R = radius;
  std::ostringstream name;
  name << "circle radius=" << radius;
  return ParametricCurve(
      2.0 * M_PI * R,
      [R](double t) {
        const double a = t / R;
        const double ca = std::cos(a), sa = std::sin(a);
        CurveJet j;
        j.p = {R * ca, R * sa, 0.0};
        j.d[0] = {-sa, ca, 0.0};
        j.d[1] = {-ca / R, -sa / R, 0.0};
        j.d[2] = {sa / (R * R), -ca / (R * R), 0.0};
        j.d[3] = {ca / (R * R * R), sa / (R * R * R), 0.0};
        return j;
      },
      Smoothness::kCinf, true, {}, name.str());
}

ParametricCurve ellipse(double a, double b) {
  if (!(std::min(a, b) >= 1.0)) {
    throw std::invalid_argument("ellipse: semi-axes must be >= 1 (regularity)");
  }
  std::ostringstream name;
  name << "ellipse a=" << a << " b=" << b;
  return ParametricCurve(
      2.0 * M_PI,
      [a, b](double t) {
        const double ct = std::cos(t), st = std::sin(t);
        CurveJet j;
        j.p = {a * ct, b * st, 0.0};
        j.d[0] = {-a * st, b * ct, 0.0};
        j.d[1] = {-a * ct, -b * st, 0.0};
        j.d[2] = {a * st, -b * ct, 0.0};
        j.d[3] = {a * ct, b * st, 0.0};
        return j;
      },
      Smoothness::kCinf, true, {}, name.str());
}

ParametricCurve torus_knot(int p, int q, double R, double r) {
  if (p < 1 || q < 1) throw std::invalid_argument("torus_knot: p, q must be >= 1");
  if (!(R > r && r > 0.0)) throw std::invalid_argument("torus_knot: need R > r > 0");
  std::ostringstream name;
  name << "torus-knot p=" << p << " q=" << q << " R=" << R << " r=" << r;
  const double dp = p, dq = q;
  return ParametricCurve(
      2.0 * M_PI,
      [dp, dq, R, r](double t) {
        const double cq = std::cos(dq * t), sq = std::sin(dq * t);
        const double cp = std::cos(dp * t), sp = std::sin(dp * t);
        const double rho = R + r * cq;
        const double rho1 = -dq * r * sq;
        const double rho2 = -dq * dq * r * cq;
        const double rho3 = dq * dq * dq * r * sq;
        const double rho4 = dq * dq * dq * dq * r * cq;
        CurveJet j;
        j.p = {rho * cp, rho * sp, r * sq};
        j.d[0] = {rho1 * cp - dp * rho * sp, rho1 * sp + dp * rho * cp, dq * r * cq};
        j.d[1] = {rho2 * cp - 2 * dp * rho1 * sp - dp * dp * rho * cp,
                  rho2 * sp + 2 * dp * rho1 * cp - dp * dp * rho * sp,
                  -dq * dq * r * sq};
        j.d[2] = {rho3 * cp - 3 * dp * rho2 * sp - 3 * dp * dp * rho1 * cp +
                      dp * dp * dp * rho * sp,
                  rho3 * sp + 3 * dp * rho2 * cp - 3 * dp * dp * rho1 * sp -
                      dp * dp * dp * rho * cp,
                  -dq * dq * dq * r * cq};
        j.d[3] = {rho4 * cp - 4 * dp * rho3 * sp - 6 * dp * dp * rho2 * cp +
                      4 * dp * dp * dp * rho1 * sp + dp * dp * dp * dp * rho * cp,
                  rho4 * sp + 4 * dp * rho3 * cp - 6 * dp * dp * rho2 * sp -
                      4 * dp * dp * dp * rho1 * cp + dp * dp * dp * dp * rho * sp,
                  dq * dq * dq * dq * r * sq};
        return j;
      },
      Smoothness::kCinf, true, {}, name.str());
}

ParametricCurve fourier_curve(const FourierCoeffs& coeffs, std::string name) {
  if (coeffs.cos_xyz.size() != coeffs.sin_xyz.size()) {
    throw std::invalid_argument("fourier_curve: coefficient lists must align");
  }
  auto cs = std::make_shared<FourierCoeffs>(coeffs);
  return ParametricCurve(
      2.0 * M_PI,
      [cs](double t) {
        CurveJet j;
        j.p = {0, 0, 0};
        for (auto& dk : j.d) dk = {0, 0, 0};
        for (std::size_t k = 0; k < cs->cos_xyz.size(); ++k) {
          const double dk = static_cast<double>(k);
          const double ck = std::cos(dk * t), sk = std::sin(dk * t);
          const Vec3& A = cs->cos_xyz[k];
          const Vec3& B = cs->sin_xyz[k];
          j.p += A * ck + B * sk;
          j.d[0] += (B * ck - A * sk) * dk;
          j.d[1] += (A * ck + B * sk) * (-dk * dk);
          j.d[2] += (A * sk - B * ck) * (dk * dk * dk);
          j.d[3] += (A * ck + B * sk) * (dk * dk * dk * dk);
        }
        return j;
      },
      Smoothness::kCinf, true, {}, std::move(name));
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

PolygonalCurve inscribe(const ParametricCurve& c, const std::vector<double>& params) {
  if (params.size() < 3) throw std::invalid_argument("inscribe: need >= 3 parameters");
  for (std::size_t i = 0; i + 1 < params.size(); ++i) {
    if (!(params[i] < params[i + 1])) {
      throw std::invalid_argument("inscribe: parameters must be strictly increasing");
    }
  }
  if (params.back() - params.front() >= c.period()) {
    throw std::invalid_argument("inscribe: parameters must lie within one period");
  }
  std::vector<Vec3> verts;
  verts.reserve(params.size());
  for (double t : params) verts.push_back(c.position(t));
  return PolygonalCurve(std::move(verts), params);
}

PolygonalCurve inscribe(const ParametricCurve& c, int n) {
  if (n < 3) throw std::invalid_argument("inscribe: need n >= 3");
  std::vector<double> params;
  params.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) params.push_back(c.period() * i / n);
  return inscribe(c, params);
}

double max_edge_length(const PolygonalCurve& p) {
  double m = 0.0;
  for (int i = 0; i < p.size(); ++i) m = std::max(m, p.edge_length(i));
  return m;
}

PiecewiseCurve round_corners(const PolygonalCurve& p, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("round_corners: radius must be > 0");
  const int n = p.size();
  std::vector<double> trim(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double beta = angle_between(p.edge_tangent(i - 1), p.edge_tangent(i));
    if (beta < 1e-9) {
      std::ostringstream os;
      os << "round_corners: degenerate (collinear) corner at vertex " << i;
      throw std::domain_error(os.str());
    }
    if (beta > M_PI - 1e-9) {
      std::ostringstream os;
      os << "round_corners: corner angle not positive at vertex " << i;
      throw std::domain_error(os.str());
    }
    trim[static_cast<std::size_t>(i)] = radius * std::tan(0.5 * beta);
  }
  for (int i = 0; i < n; ++i) {
    const double len = p.edge_length(i);
    if (trim[static_cast<std::size_t>(i)] + trim[static_cast<std::size_t>((i + 1) % n)] >=
        len * (1.0 - 1e-12)) {
      std::ostringstream os;
      os << "round_corners: radius too large for corner at vertex " << (i + 1) % n;
      throw std::domain_error(os.str());
    }
  }

  std::vector<CurveSegment> segs;
  segs.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int ip1 = (i + 1) % n;
    const Vec3 w0 = p.edge_tangent(i).vec();
    const Vec3 w1 = p.edge_tangent(ip1).vec();
    const Vec3 a = p.vertex(i) + w0 * trim[static_cast<std::size_t>(i)];
    const Vec3 b = p.vertex(ip1) - w0 * trim[static_cast<std::size_t>(ip1)];

    CurveSegment straight;
    straight.length = (b - a).norm();
    straight.straight = true;
    straight.planar = true;
    straight.plane_point = a;
    straight.plane_normal = {0, 0, 0};
    straight.eval = [a, w0](double u) {
      CurveJet j;
      j.p = a + w0 * u;
      j.d[0] = w0;
      j.d[1] = j.d[2] = j.d[3] = {0, 0, 0};
      return j;
    };
    segs.push_back(std::move(straight));

    // Corner arc at vertex ip1, in the plane of the two edges.
    const double beta = angle_between(p.edge_tangent(i), p.edge_tangent(ip1));
    const Vec3 e1 = w0;
    const Vec3 e2 = (w1 - e1 * dot(w1, e1)).normalized();
    const Vec3 center = b + e2 * radius;
    CurveSegment arc;
    arc.length = radius * beta;
    arc.straight = false;
    arc.planar = true;
    arc.plane_point = center;
    arc.plane_normal = cross(e1, e2).normalized();
    arc.eval = [center, e1, e2, radius](double u) {
      const double al = u / radius;
      const double ca = std::cos(al), sa = std::sin(al);
      CurveJet j;
      j.p = center - e2 * (radius * ca) + e1 * (radius * sa);
      j.d[0] = e2 * sa + e1 * ca;
      j.d[1] = (e2 * ca - e1 * sa) / radius;
      j.d[2] = (e2 * sa + e1 * ca) * (-1.0 / (radius * radius));
      j.d[3] = (e2 * ca - e1 * sa) * (-1.0 / (radius * radius * radius));
      return j;
    };
    segs.push_back(std::move(arc));
  }
  return PiecewiseCurve(std::move(segs));
}

}  // namespace wr
