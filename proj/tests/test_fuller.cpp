#include <doctest.h>

#include <array>
#include <cmath>

#include "wr/fuller.hpp"
#include "wr/oracle.hpp"
#include "wr/quadrature.hpp"
#include "wr/writhe.hpp"
#include "test_helpers.hpp"

using namespace wr;

namespace {

// Analytic tilted-circle family on S^2: radius angle alpha about axis w3.
struct CircleFamily {
  Vec3 w1, w2, w3;
  double alpha;
  UnitVec3 at(double t) const {
    return UnitVec3(w1 * (std::sin(alpha) * std::cos(t)) +
                    w2 * (std::sin(alpha) * std::sin(t)) + w3 * std::cos(alpha));
  }
  Vec3 deriv(double t) const {
    return w1 * (-std::sin(alpha) * std::sin(t)) + w2 * (std::sin(alpha) * std::cos(t));
  }
};

CircleFamily random_family(std::mt19937_64& rng, double max_tilt) {
  // Frame near the north pole so two such families stay non-antipodal.
  const UnitVec3 axis(wrtest::random_vec(rng, 0.2) + Vec3{0, 0, 1});
  const Vec3 helper = std::fabs(axis.z()) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
  const Vec3 w1 = cross(axis.vec(), helper).normalized();
  const Vec3 w2 = cross(axis.vec(), w1);
  return {w1, w2, axis.vec(), wrtest::uniform(rng, 0.3, max_tilt)};
}

RibbonSampling sample_ribbon(const CircleFamily& f0, const CircleFamily& f1, int m) {
  RibbonSampling r;
  for (int i = 0; i <= m; ++i) {
    const double t = 2.0 * M_PI * i / m;
    r.params.push_back(t);
    r.T0.push_back(f0.at(t));
    r.T1.push_back(f1.at(t));
    r.T0p.push_back(f0.deriv(t));
    r.T1p.push_back(f1.deriv(t));
  }
  return r;
}

// The region-parametrization oracle: area of R as the direct S^2 integral of
// v = u/|u|, u(theta, t) = cos(theta) T0(t) + sin(theta) T1(t), theta in
// [0, pi/2]. Independent of the ribbon_area integrand path.
double ribbon_area_oracle(const CircleFamily& f0, const CircleFamily& f1,
                          double abs_tol) {
  auto integrand = [&](double theta, double t) {
    const double c = std::cos(theta), s = std::sin(theta);
    const Vec3 u = f0.at(t).vec() * c + f1.at(t).vec() * s;
    const Vec3 du_dtheta = f1.at(t).vec() * c - f0.at(t).vec() * s;
    const Vec3 du_dt = f0.deriv(t) * c + f1.deriv(t) * s;
    const double un = u.norm();
    return triple(du_dtheta, du_dt, u) / (un * un * un);
  };
  return integrate2d_adaptive(
             [&](double theta, double t) { return integrand(theta, t); },
             {Rect{0, M_PI / 2, 0, 2.0 * M_PI}}, abs_tol)
      .value;
}

}  // namespace

TEST_CASE("ribbon_area: coincident tantrices give zero") {
  auto rng = wrtest::make_rng(41);
  const CircleFamily f = random_family(rng, 0.8);
  const RibbonSampling r = sample_ribbon(f, f, 400);
  CHECK(std::fabs(ribbon_area(r)) < 1e-14);
}

TEST_CASE("ribbon_area: latitude circles give the cap-area difference") {
  for (auto [th0, th1] : std::array<std::array<double, 2>, 3>{
           {{0.4, 0.9}, {0.2, 1.4}, {1.0, 1.1}}}) {
    const CircleFamily f0{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, th0};
    const CircleFamily f1{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, th1};
    const RibbonSampling r = sample_ribbon(f0, f1, 2000);
    const double want = 2.0 * M_PI * (std::cos(th0) - std::cos(th1));
    CHECK(ribbon_area(r) == doctest::Approx(want).epsilon(1e-10 / std::fabs(want)));
  }
}

TEST_CASE("ribbon_area: matches the region-parametrization oracle") {
  auto rng = wrtest::make_rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    const CircleFamily f0 = random_family(rng, 0.7);
    const CircleFamily f1 = random_family(rng, 0.7);
    const double got = ribbon_area(sample_ribbon(f0, f1, 4000));
    const double want = ribbon_area_oracle(f0, f1, 1e-10);
    CHECK(got == doctest::Approx(want).epsilon(1e-8 / std::max(1.0, std::fabs(want))));
  }
}

TEST_CASE("ribbon_area: antisymmetric under swapping the tantrices") {
  auto rng = wrtest::make_rng(43);
  const CircleFamily f0 = random_family(rng, 0.7), f1 = random_family(rng, 0.7);
  const double a = ribbon_area(sample_ribbon(f0, f1, 2000));
  const double b = ribbon_area(sample_ribbon(f1, f0, 2000));
  CHECK(a == doctest::Approx(-b).epsilon(1e-10));
}

TEST_CASE("ribbon_area: derivative-free fallback and antipodal rejection") {
  const CircleFamily f0{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, 0.4};
  const CircleFamily f1{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, 0.9};
  RibbonSampling r = sample_ribbon(f0, f1, 4000);
  r.T0p.clear();
  r.T1p.clear();
  const double want = 2.0 * M_PI * (std::cos(0.4) - std::cos(0.9));
  CHECK(ribbon_area(r) == doctest::Approx(want).epsilon(1e-5));

  RibbonSampling bad;
  bad.params = {0.0, 0.5, 1.0};
  bad.T0 = {UnitVec3(0, 0, 1), UnitVec3(0, 0, 1), UnitVec3(0, 0, 1)};
  bad.T1 = {UnitVec3(0, 0, 1), UnitVec3(0, 0, -1), UnitVec3(0, 0, 1)};
  CHECK_THROWS_AS(ribbon_area(bad), std::domain_error);
}

TEST_CASE("theta antiderivative closed form for the ribbon integrand") {
  // The definite integral over [0, pi/2] collapses to 1/(1+a).
  auto closed_form = [](double a, double theta) {
    return (-a * std::cos(theta) - std::sin(theta)) /
           ((a * a - 1.0) * std::sqrt(1.0 + a * std::sin(2.0 * theta)));
  };
  for (int i = 0; i < 100; ++i) {
    const double a = -0.99 + 1.98 * i / 99.0;
    const auto numeric = integrate_adaptive(
        [a](double th) {
          return std::cos(th) / std::pow(1.0 + a * std::sin(2.0 * th), 1.5);
        },
        0.0, M_PI / 2, 1e-13, 20000);
    const double analytic = closed_form(a, M_PI / 2) - closed_form(a, 0.0);
    CHECK(numeric.value == doctest::Approx(analytic).epsilon(1e-10));
    CHECK(analytic == doctest::Approx(1.0 / (1.0 + a)).epsilon(1e-12));
  }
}

TEST_CASE("delta_writhe_smooth: identical curves give zero") {
  const auto h = closed_helix(2, 1.0, 0.5);
  CHECK(std::fabs(delta_writhe_smooth(h, h, 512)) < 1e-13);
}

TEST_CASE("delta_writhe_smooth: rigid rotation changes nothing") {
  const auto knot = torus_knot(2, 3, 3.0, 1.0);
  auto rng = wrtest::make_rng(44);
  const auto rot = wrtest::random_rotation(rng);
  const wrtest::Rotation small{rot.axis, 0.2};
  const ParametricCurve rotated(
      knot.period(),
      [&knot, small](double t) {
        CurveJet j = knot.jet(t);
        j.p = small.apply(j.p);
        for (auto& d : j.d) d = small.apply(d);
        return j;
      },
      knot.smoothness(), true, {}, "rotated");
  CHECK(std::fabs(delta_writhe_smooth(knot, rotated, 2048)) < 1e-6);
}

TEST_CASE("delta_writhe_smooth: helix pitch family matches the analytic difference") {
  const auto h033 = closed_helix(3, 1.0, 0.33);
  const auto h040 = closed_helix(3, 1.0, 0.40);
  const double delta = delta_writhe_smooth(h033, h040, 4096);
  const double analytic = 3.0 * (std::sin(0.33) - std::sin(0.40));
  CHECK(delta == doctest::Approx(analytic).epsilon(1e-4 / std::fabs(analytic)));
  const double via_quadrature =
      writhe_smooth_quadrature(h040) - writhe_smooth_quadrature(h033);
  CHECK(delta == doctest::Approx(via_quadrature).epsilon(1e-4 / std::fabs(analytic)));
}

TEST_CASE("delta_writhe_smooth: additivity over a pitch chain") {
  const auto a = closed_helix(3, 1.0, 0.33);
  const auto b = closed_helix(3, 1.0, 0.36);
  const auto c = closed_helix(3, 1.0, 0.40);
  const double ab = delta_writhe_smooth(a, b, 4096);
  const double bc = delta_writhe_smooth(b, c, 4096);
  const double ac = delta_writhe_smooth(a, c, 4096);
  CHECK(ab + bc == doctest::Approx(ac).epsilon(2e-5 / std::fabs(ac)));
}

TEST_CASE("delta_writhe_polygonal: circle with inscribed n-gon is degenerate zero") {
  const auto circ = circle(2.0);
  const auto gon = inscribe(circ, 16);
  const auto dec = delta_writhe_polygonal(circ, gon, 32);
  CHECK(std::fabs(dec.total) < 1e-9);
  for (double tri : dec.triangle_areas) CHECK(std::fabs(tri) < 1e-12);
}

TEST_CASE("delta_writhe_polygonal: closed helix n=1000 matches the direct difference") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  const auto poly = inscribe(helix, 1000);
  const auto dec = delta_writhe_polygonal(helix, poly, 64);
  const double direct = writhe_polygonal(poly) - closed_helix_exact_writhe(3, 0.33);
  CHECK(dec.total == doctest::Approx(direct).epsilon(1e-5 / std::fabs(direct)));
  // Same magnitude regime as the reference table's 0.00024.
  CHECK(std::fabs(dec.total) > 0.00012);
  CHECK(std::fabs(dec.total) < 0.00048);
}

TEST_CASE("delta_writhe_polygonal: random smooth curve cross-check") {
  auto rng = wrtest::make_rng(45);
  const auto curve = wrtest::random_fourier_curve(rng);
  const auto poly = inscribe(curve, 128);
  const auto dec = delta_writhe_polygonal(curve, poly, 128);
  const double direct = writhe_polygonal(poly) - writhe_smooth_quadrature(curve);
  CHECK(std::fabs(dec.total - direct) < 1e-5);
}

TEST_CASE("delta_writhe_polygonal: span refinement converges at second order") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  const auto poly = inscribe(helix, 200);
  const double ref = delta_writhe_polygonal(helix, poly, 512).total;
  const double e32 = std::fabs(delta_writhe_polygonal(helix, poly, 32).total - ref);
  const double e64 = std::fabs(delta_writhe_polygonal(helix, poly, 64).total - ref);
  CHECK(e64 < e32);
  CHECK(e32 / e64 > 2.0);
  CHECK(e32 / e64 < 8.0);
}

TEST_CASE("delta_writhe_polygonal: hypothesis violations name the corner") {
  const auto circ = circle(2.0);
  const auto square = inscribe(circ, 4);  // corner angles exactly pi/2
  CHECK_THROWS_AS(delta_writhe_polygonal(circ, square, 16), std::domain_error);
}

TEST_CASE("check_hypotheses: fine helix inscription passes everything") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  const auto rep = check_hypotheses(helix, inscribe(helix, 1000));
  CHECK(rep.corner_angles_pass);
  CHECK(rep.tangent_angle_pass);
  CHECK(rep.edge_length_pass);
  CHECK(rep.lemma2_pass);
  CHECK(rep.ribbon.pass);
  CHECK(rep.all_pass());
  CHECK(rep.max_tangent_angle < 0.51005 * (2.0 * rep.B2) * rep.max_edge);
}

TEST_CASE("check_hypotheses: coarse inscription fails the edge-length condition") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  const auto rep = check_hypotheses(helix, inscribe(helix, 10));
  CHECK_FALSE(rep.edge_length_pass);
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("check_hypotheses: square in a circle fails at exactly pi/2") {
  const auto circ = circle(2.0);
  const auto rep = check_hypotheses(circ, inscribe(circ, 4));
  CHECK_FALSE(rep.corner_angles_pass);
  CHECK(rep.min_corner_angle == doctest::Approx(M_PI / 2).epsilon(1e-12));
}
