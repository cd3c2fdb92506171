#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "wr/curves.hpp"
#include "test_helpers.hpp"

using namespace wr;

TEST_CASE("closed_helix: construction facts for the reference instance") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  // Helical length 6*pi/cos(0.33) plus the racetrack closure.
  const double Lh = 6.0 * M_PI / std::cos(0.33);
  const double h = Lh * std::sin(0.33);
  const double Lc = h + 2.0 * (1.0 + std::sin(0.33) + std::cos(0.33)) + 4.0 +
                    2.0 * M_PI * 2.5;
  CHECK(helix.period() == doctest::Approx(Lh + Lc).epsilon(1e-12));
  CHECK(helix.period() == doctest::Approx(50.62922).epsilon(1e-6));
  CHECK(closed_helix_length(3, 1.0, 0.33) == doctest::Approx(helix.period()));
  CHECK(closed_helix_exact_writhe(3, 0.33) ==
        doctest::Approx(3.0 * (1.0 - std::sin(0.33))).epsilon(1e-15));
  CHECK(closed_helix_exact_writhe(3, 0.33) == doctest::Approx(2.0278709).epsilon(1e-7));
}

TEST_CASE("closed_helix: unit speed everywhere, helical derivative bounds") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  const double Lh = 6.0 * M_PI / std::cos(0.33);
  for (int i = 0; i < 1024; ++i) {
    const double t = helix.period() * i / 1024;
    CHECK(helix.jet(t).d[0].norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
  // Helical section occupies u = t + Lh/2 (mod L) in [0, Lh]; with unit
  // radius its second and third derivative norms stay below one.
  for (int i = 0; i < 512; ++i) {
    const double u = Lh * i / 512;
    const double t = std::fmod(u - Lh / 2 + helix.period(), helix.period());
    const CurveJet j = helix.jet(t);
    CHECK(j.d[1].norm() <= 1.0 + 1e-12);
    CHECK(j.d[2].norm() <= 1.0 + 1e-12);
  }
}

TEST_CASE("closed_helix: pitch near pi/2 gives writhe near zero") {
  const auto straightish = closed_helix(1, 1.0, 1.52);
  CHECK(closed_helix_exact_writhe(1, 1.52) ==
        doctest::Approx(1.0 - std::sin(1.52)).epsilon(1e-12));
  CHECK(closed_helix_exact_writhe(1, 1.52) < 2e-3);
  CHECK(straightish.period() > 0.0);
}

TEST_CASE("closed_helix: parameter validation") {
  CHECK_THROWS_AS(closed_helix(0, 1.0, 0.33), std::invalid_argument);
  CHECK_THROWS_AS(closed_helix(3, -1.0, 0.33), std::invalid_argument);
  CHECK_THROWS_AS(closed_helix(3, 1.0, 1.7), std::invalid_argument);
}

TEST_CASE("inscribe: square in a circle, exact vertex read-back") {
  const auto c = circle(1.0);
  const auto square = inscribe(c, 4);
  REQUIRE(square.size() == 4);
  for (int i = 0; i < 4; ++i) {
    const Vec3 expect = c.position(square.params()[static_cast<std::size_t>(i)]);
    CHECK(square.vertex(i).x == expect.x);
    CHECK(square.vertex(i).y == expect.y);
    CHECK(square.vertex(i).z == expect.z);
  }
  CHECK(max_edge_length(square) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("inscribe: closed-helix table edge lengths") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  const double table_x[] = {0.506, 0.203, 0.101, 0.051};
  const int table_n[] = {100, 250, 500, 1000};
  for (int row = 0; row < 4; ++row) {
    const double x = max_edge_length(inscribe(helix, table_n[row]));
    CHECK(std::fabs(x - table_x[row]) < 5.5e-4);  // table prints 3 decimals
  }
  // Equal parameter spacing on a unit-speed curve: the straight runs pin the
  // max edge at exactly period/n.
  const auto p1000 = inscribe(helix, 1000);
  CHECK(max_edge_length(p1000) ==
        doctest::Approx(helix.period() / 1000).epsilon(1e-9));
}

TEST_CASE("inscribe: refinement shrinks the max edge") {
  const auto knot = torus_knot(2, 3, 3.0, 1.0);
  double prev = 1e300;
  for (int n : {32, 64, 128, 256}) {
    const double x = max_edge_length(inscribe(knot, n));
    CHECK(x < prev);
    prev = x;
  }
}

TEST_CASE("inscribe: rejects bad parameter lists") {
  const auto c = circle(1.0);
  CHECK_THROWS_AS(inscribe(c, std::vector<double>{0.0, 1.0, 1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(inscribe(c, 2), std::invalid_argument);
}

TEST_CASE("max_edge_length: trivial cases") {
  PolygonalCurve unit_square({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}});
  CHECK(max_edge_length(unit_square) == doctest::Approx(1.0));
  auto rng = wrtest::make_rng(21);
  const auto poly = wrtest::random_simple_polygon(rng, 12);
  double mean = 0.0;
  for (int i = 0; i < poly.size(); ++i) mean += poly.edge_length(i);
  mean /= poly.size();
  CHECK(max_edge_length(poly) >= mean);
}

TEST_CASE("round_corners: junction tangents match edge directions") {
  auto rng = wrtest::make_rng(22);
  const auto poly = wrtest::random_simple_polygon(rng, 8);
  double min_edge = 1e300;
  for (int i = 0; i < poly.size(); ++i) min_edge = std::min(min_edge, poly.edge_length(i));
  const auto rounded = round_corners(poly, 0.05 * min_edge);
  const auto& segs = rounded.segments();
  REQUIRE(segs.size() == 2 * static_cast<std::size_t>(poly.size()));
  for (std::size_t k = 0; k < segs.size(); ++k) {
    const CurveJet end = segs[k].eval(segs[k].length);
    const CurveJet next = segs[(k + 1) % segs.size()].eval(0.0);
    CHECK(angle_between(UnitVec3(end.d[0]), UnitVec3(next.d[0])) <= 1e-10);
  }
  // Straight segments run along the original edges.
  for (int i = 0; i < poly.size(); ++i) {
    const auto& s = segs[2 * static_cast<std::size_t>(i)];
    CHECK(s.straight);
    CHECK(angle_between(UnitVec3(s.eval(0.0).d[0]), poly.edge_tangent(i)) < 1e-12);
  }
}

TEST_CASE("round_corners: radius to zero converges pointwise to the polygon") {
  auto rng = wrtest::make_rng(23);
  const auto poly = wrtest::random_simple_polygon(rng, 6);
  double prev_gap = 1e300;
  for (double radius : {0.05, 0.01, 0.002}) {
    const auto rounded = round_corners(poly, radius);
    // Max distance from each polygon vertex to the rounded curve's arcs.
    double gap = 0.0;
    for (int i = 0; i < poly.size(); ++i) {
      const auto& arc = rounded.segments()[2 * static_cast<std::size_t>(i) + 1];
      gap = std::max(gap, (arc.eval(arc.length / 2).p - poly.vertex(i + 1)).norm());
    }
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 0.01 * poly.diameter());
}

TEST_CASE("round_corners: oversized radius is rejected with the corner named") {
  PolygonalCurve tri({{0, 0, 0}, {1, 0, 0}, {0.5, 0.8, 0.3}});
  CHECK_THROWS_AS(round_corners(tri, 10.0), std::domain_error);
}

TEST_CASE("tantrix: planar circle maps to a great circle") {
  const auto t = tantrix(circle(2.0), 64);
  REQUIRE(t.samples.size() == 64);
  for (const auto& s : t.samples) {
    CHECK(std::fabs(s.z()) < 1e-14);
    CHECK(std::fabs(s.vec().norm() - 1.0) < 1e-14);
  }
}

TEST_CASE("tantrix: closed helix rides the cap circle plus a closure sweep") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  const double Lh = 6.0 * M_PI / std::cos(0.33);
  const auto t = tantrix(helix, 2048);
  int on_cap = 0;
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    const double u = std::fmod(t.params[i] + Lh / 2, helix.period());
    if (u < Lh) {
      // Helical tangents have constant z-component sin(0.33).
      CHECK(t.samples[i].z() == doctest::Approx(std::sin(0.33)).epsilon(1e-12));
      ++on_cap;
    } else {
      // Closure tangents lie in the plane x = 1, i.e. have zero x-component.
      CHECK(std::fabs(t.samples[i].x()) < 1e-12);
    }
  }
  CHECK(on_cap > 700);  // helix occupies ~39% of the parameter range
}

TEST_CASE("tantrix: polygonal chain closes") {
  auto rng = wrtest::make_rng(24);
  const auto poly = wrtest::random_simple_polygon(rng, 4);
  const auto t = tantrix(poly);
  REQUIRE(t.polygonal);
  REQUIRE(t.samples.size() == 4);
  const auto loop = densified_tantrix(t, 16);
  CHECK(loop.size() == 4 * 15);
  // Last densified point connects back to the first edge tangent.
  CHECK(angle_between(loop.back(), t.samples[0]) <
        angle_between(t.samples[3], t.samples[0]) + 1e-12);
}

TEST_CASE("ParametricCurve: finite-difference fallback approximates derivatives") {
  const auto exact = circle(2.0);
  const auto fd = ParametricCurve::from_positions(
      exact.period(), [&exact](double t) { return exact.position(t); },
      Smoothness::kCinf, "circle-fd");
  CHECK_FALSE(fd.analytic_derivatives());
  for (double t : {0.3, 2.0, 5.5}) {
    const CurveJet a = exact.jet(t), b = fd.jet(t);
    CHECK((a.d[0] - b.d[0]).norm() < 1e-9);
    CHECK((a.d[1] - b.d[1]).norm() < 1e-7);
    CHECK((a.d[2] - b.d[2]).norm() < 1e-4);
    CHECK((a.d[3] - b.d[3]).norm() < 2e-1);
  }
}

TEST_CASE("ParametricCurve: regularity violations rejected") {
  FourierCoeffs fc;
  fc.cos_xyz = {{0, 0, 0}, {0.1, 0, 0}};  // tiny loop, |C'| << 1
  fc.sin_xyz = {{0, 0, 0}, {0, 0.1, 0}};
  CHECK_THROWS_AS(fourier_curve(fc), std::invalid_argument);
}

TEST_CASE("PolygonalCurve: degenerate inputs rejected") {
  CHECK_THROWS_AS(PolygonalCurve({{0, 0, 0}, {1, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(PolygonalCurve({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("polygon file: bit-for-bit round trip with metadata and params") {
  const auto helix = closed_helix(3, 1.0, 0.33);
  const auto poly = inscribe(helix, 37);
  const std::string path =
      (std::filesystem::temp_directory_path() / "wr_roundtrip.poly").string();
  write_polygon_file(path, poly, {{"generator", helix.name()}, {"note", "test"}});
  const PolygonFile back = read_polygon_file(path);
  REQUIRE(back.curve.size() == poly.size());
  for (int i = 0; i < poly.size(); ++i) {
    CHECK(back.curve.vertex(i).x == poly.vertex(i).x);
    CHECK(back.curve.vertex(i).y == poly.vertex(i).y);
    CHECK(back.curve.vertex(i).z == poly.vertex(i).z);
  }
  REQUIRE(back.curve.has_params());
  for (int i = 0; i < poly.size(); ++i) {
    CHECK(back.curve.params()[static_cast<std::size_t>(i)] ==
          poly.params()[static_cast<std::size_t>(i)]);
  }
  CHECK(back.metadata.at("generator") == helix.name());
  CHECK(back.metadata.at("note") == "test");
  std::filesystem::remove(path);
}
