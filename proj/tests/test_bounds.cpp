#include <doctest.h>

#include <cmath>

#include "wr/bounds.hpp"
#include "wr/writhe.hpp"
#include "test_helpers.hpp"

using namespace wr;

TEST_CASE("arclength_bounds: stated constants") {
  DerivativeBounds b{2.0, 1.0, 1.0, 1.0};
  const ArclengthBounds a = arclength_bounds(b);
  CHECK(a.K == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(a.T == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(a.B4p > b.B4);

  DerivativeBounds b2{1.0, 0.5, 0.0, 0.1};
  const ArclengthBounds a2 = arclength_bounds(b2);
  CHECK(a2.K == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a2.T == doctest::Approx(2.5).epsilon(1e-15));
}

TEST_CASE("arclength_bounds: sampled helix derivatives stay below K and B4p") {
  const auto helix = closed_helix(3, 1.0, 0.33);  // unit speed already
  const DerivativeBounds est = estimate_derivative_bounds(helix);
  const ArclengthBounds a = arclength_bounds(est);
  double max2 = 0.0, max4 = 0.0;
  for (int i = 0; i < 4096; ++i) {
    const CurveJet j = helix.jet(helix.period() * i / 4096);
    max2 = std::max(max2, j.d[1].norm());
    max4 = std::max(max4, j.d[3].norm());
  }
  CHECK(max2 < a.K);
  CHECK(max4 < a.B4p);
}

TEST_CASE("error_bound: reproduces the reference bound column") {
  DerivativeBounds b{2.0, 1.0, 1.0, 1.0};
  const ErrorCertificate c100 = error_bound(100, 0.506, b);
  CHECK(c100.alpha == 6.0);  // exactly B2*(5*B2^2+B3)
  CHECK(c100.bound == doctest::Approx(77.73).epsilon(1e-4));
  CHECK_FALSE(c100.valid);  // 1/0.506 < 5

  const ErrorCertificate c250 = error_bound(250, 0.203, b);
  CHECK(c250.bound == doctest::Approx(12.55).epsilon(1e-3));

  const ErrorCertificate c500 = error_bound(500, 0.101, b);
  CHECK(c500.bound == doctest::Approx(3.09).epsilon(1e-3));
  CHECK(c500.valid);

  // Inverting 6*1000*x^3 = 0.786 lands on the table's rounded 0.051.
  const double x_implied = std::cbrt(0.786 / 6000.0);
  CHECK(x_implied == doctest::Approx(0.0508).epsilon(1e-2));
  CHECK(std::round(x_implied * 1000.0) / 1000.0 == doctest::Approx(0.051));
}

TEST_CASE("error_bound: fails closed but keeps its data") {
  DerivativeBounds b{2.0, 1.0, 1.0, 1.0};
  const ErrorCertificate c = error_bound(10, 5.0, b);
  CHECK_FALSE(c.valid);
  CHECK(c.bound == doctest::Approx(6.0 * 10 * 125.0));
  REQUIRE(c.hypotheses.size() == 1);
  CHECK_FALSE(c.hypotheses[0].pass);
  CHECK_THROWS_AS(error_bound(2, 0.1, b), std::invalid_argument);
}

TEST_CASE("regional_error_bound: degenerate partition equals the plain bound") {
  DerivativeBounds b{2.0, 1.0, 1.0, 1.0};
  const ErrorCertificate whole = error_bound(500, 0.101, b);
  const ErrorCertificate regional = regional_error_bound({{500, 0.101, b, false}});
  CHECK(regional.bound == doctest::Approx(whole.bound).epsilon(1e-15));
  CHECK(regional.valid == whole.valid);
}

TEST_CASE("regional_error_bound: planar closure contributes nothing") {
  DerivativeBounds helical{2.0, 1.0, 1.0, 1.0};
  const ErrorCertificate cert = regional_error_bound({
      {394, 0.0506, helical, false},  // helical region
      {606, 0.0506, {}, true},        // planar closure
  });
  CHECK(cert.bound == doctest::Approx(6.0 * 394 * std::pow(0.0506, 3)).epsilon(1e-12));
  CHECK(cert.n == 1000);
  REQUIRE(cert.regions.size() == 2);
  CHECK(cert.regions[1].bound == 0.0);
  CHECK(cert.regions[1].pass);
}

TEST_CASE("regional_error_bound: additive under splitting a region") {
  DerivativeBounds b{2.0, 1.0, 1.0, 1.0};
  const ErrorCertificate one = regional_error_bound({{300, 0.05, b, false}});
  const ErrorCertificate three = regional_error_bound({
      {100, 0.05, b, false},
      {100, 0.05, b, false},
      {100, 0.05, b, false},
  });
  CHECK(three.bound == doctest::Approx(one.bound).epsilon(1e-14));
}

TEST_CASE("detect_planar_runs: planar polygon is one full run") {
  std::vector<Vec3> v;
  for (int i = 0; i < 9; ++i) {
    const double phi = 2.0 * M_PI * i / 9;
    v.push_back({std::cos(phi) * (1.0 + 0.2 * (i % 2)), std::sin(phi), 0.0});
  }
  const auto runs = detect_planar_runs(PolygonalCurve(v));
  REQUIRE(runs.size() == 1);
  CHECK(runs[0].count == 9);
}

TEST_CASE("detect_planar_runs: helix inscription finds exactly the closure") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  const int n = 400;
  const auto poly = inscribe(helix, n);
  const auto runs = detect_planar_runs(poly);
  REQUIRE(runs.size() == 1);
  // Ground truth: closure vertices have u = t + Lh/2 (mod L) in [Lh, L].
  const double Lh = 6.0 * M_PI / std::cos(0.33);
  const double L = helix.period();
  auto is_closure = [&](int i) {
    const double u =
        std::fmod(poly.params()[static_cast<std::size_t>(i)] + Lh / 2, L);
    return u >= Lh - 1e-9;
  };
  for (int k = 0; k < runs[0].count; ++k) {
    const int idx = (runs[0].start + k) % n;
    // Allow the two junction vertices (they lie on the closure plane).
    if (k > 0 && k + 1 < runs[0].count) CHECK(is_closure(idx));
  }
  int closure_count = 0;
  for (int i = 0; i < n; ++i) closure_count += is_closure(i) ? 1 : 0;
  CHECK(runs[0].count >= closure_count - 2);
  CHECK(runs[0].count <= closure_count + 2);
}

TEST_CASE("detect_planar_runs: random skew polygon has only trivial runs") {
  auto rng = wrtest::make_rng(51);
  const auto poly = wrtest::random_simple_polygon(rng, 12);
  CHECK(detect_planar_runs(poly, 1e-12).empty());
}

TEST_CASE("detect_planar_runs: invariant under rigid motion") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  const auto poly = inscribe(helix, 200);
  auto rng = wrtest::make_rng(52);
  const auto rot = wrtest::random_rotation(rng);
  const Vec3 shift = wrtest::random_vec(rng, 4.0);
  std::vector<Vec3> moved;
  for (int i = 0; i < poly.size(); ++i) moved.push_back(rot.apply(poly.vertex(i)) + shift);
  const auto a = detect_planar_runs(poly);
  const auto b = detect_planar_runs(PolygonalCurve(moved));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].start == b[i].start);
    CHECK(a[i].count == b[i].count);
  }
}

TEST_CASE("lemma_chord_bounds: unit circle at span 0.2 with K = 1") {
  const auto r = lemma_chord_bounds(circle(1.0), 0.2, 1.0);
  CHECK(r.pass);
  CHECK(r.max_observed ==
        doctest::Approx(0.2 - 2.0 * std::sin(0.1)).epsilon(1e-7));
  CHECK(r.bound == doctest::Approx(0.008 / 24.0 + std::pow(0.2, 5) / 120.0)
                       .epsilon(1e-12));
  CHECK(r.margin > 0.0);
}

TEST_CASE("lemma_chord_bounds: regime guard") {
  CHECK_THROWS_AS(lemma_chord_bounds(circle(1.0), 0.5, 1.0), std::domain_error);
}

TEST_CASE("lemma_chord_bounds: helix spans from the fine inscriptions pass") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  for (double span : {0.101, 0.0506}) {
    const auto r = lemma_chord_bounds(helix, span, 2.0);
    CHECK(r.pass);
    CHECK(r.margin > 0.0);
  }
}

TEST_CASE("lemma_tangent_angle: inscribed regular polygon in a circle") {
  const auto circ = circle(1.0);
  const auto gon = inscribe(circ, 32);
  const auto r = lemma_tangent_angle(circ, gon, 1.0);
  CHECK(r.pass);
  // Max angle is exactly half the turning per edge.
  CHECK(r.max_observed == doctest::Approx(M_PI / 32).epsilon(1e-9));
  CHECK(r.margin > 0.0);
}

TEST_CASE("lemma_tangent_angle: helix inscription sweep") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  const auto r = lemma_tangent_angle(helix, inscribe(helix, 1000), 2.0);
  CHECK(r.pass);
  CHECK(r.margin > 0.0);
}

TEST_CASE("ribbon_embedded_heuristic: pass, fail-at-zero, helix rows") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  const auto dense = inscribe(helix, 2000);
  CHECK(ribbon_embedded_heuristic(helix, dense, 1.0).pass);
  CHECK_FALSE(ribbon_embedded_heuristic(helix, dense, 0.0).pass);
  for (int n : {100, 250, 500, 1000}) {
    const auto v = ribbon_embedded_heuristic(helix, inscribe(helix, n), 0.5);
    CHECK(v.pass);
    CHECK(v.max_deviation < 0.5);
  }
}

TEST_CASE("estimate_derivative_bounds: unit-speed circle") {
  const DerivativeBounds b = estimate_derivative_bounds(circle(1.0));
  CHECK(b.B1 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(b.B2 == doctest::Approx(1.05).epsilon(1e-10));
  CHECK(b.B3 == doctest::Approx(1.05).epsilon(1e-10));
  CHECK(b.B4 == doctest::Approx(1.05).epsilon(1e-10));
  CHECK(b.provenance == DerivativeBounds::Provenance::kEstimated);
}

TEST_CASE("estimate_derivative_bounds: closed helix is dominated by the coil") {
  const DerivativeBounds b = estimate_derivative_bounds(closed_helix(3, 1.0, 0.33));
  const double c = std::cos(0.33);
  CHECK(b.B2 == doctest::Approx(1.05 * c * c).epsilon(1e-6));
  CHECK(b.B3 == doctest::Approx(1.05 * c * c * c).epsilon(1e-6));
  CHECK(b.B2 < 1.0);  // "can be taken to be one" with room to spare
}

TEST_CASE("estimate_derivative_bounds: stable under grid refinement") {
  const auto knot = torus_knot(2, 3, 3.0, 1.0);
  const DerivativeBounds a = estimate_derivative_bounds(knot, 1024);
  const DerivativeBounds b = estimate_derivative_bounds(knot, 2048);
  CHECK(std::fabs(a.B2 - b.B2) / b.B2 < 0.01);
  CHECK(std::fabs(a.B3 - b.B3) / b.B3 < 0.01);
  CHECK(std::fabs(a.B4 - b.B4) / b.B4 < 0.01);
}

TEST_CASE("sampled_tube_radius: helix heuristic is comfortably positive") {
  const double tube = sampled_tube_radius(closed_helix(3, 1.0, 0.33));
  CHECK(tube > 0.3);
  CHECK(tube < 2.0);
}
