// Command-line front end: curve generation, inscription, writhe computation,
// certification, convergence studies, and plot-ready output.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "wr/bounds.hpp"
#include "wr/curves.hpp"
#include "wr/fuller.hpp"
#include "wr/oracle.hpp"
#include "wr/report.hpp"
#include "wr/writhe.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitHypothesisFailure = 3;

struct CurveOpts {
  std::string name;
  int turns = 3;
  double radius = 1.0;
  double pitch = 0.33;
  double a = 2.0, b = 1.0;
  int p = 2, q = 3;
  double R = 3.0, r = 1.0;
};

void add_curve_flags(CLI::App* cmd, CurveOpts& opts, bool required) {
  auto* o = cmd->add_option("--curve", opts.name,
                            "generator: closed-helix | circle | ellipse | torus-knot");
  if (required) o->required();
  cmd->add_option("--turns", opts.turns, "closed-helix: number of turns");
  cmd->add_option("--radius", opts.radius, "closed-helix/circle: radius");
  cmd->add_option("--pitch", opts.pitch, "closed-helix: pitch angle (radians)");
  cmd->add_option("--a", opts.a, "ellipse: first semi-axis");
  cmd->add_option("--b", opts.b, "ellipse: second semi-axis");
  cmd->add_option("--p", opts.p, "torus-knot: p");
  cmd->add_option("--q", opts.q, "torus-knot: q");
  cmd->add_option("--big-radius", opts.R, "torus-knot: torus major radius");
  cmd->add_option("--small-radius", opts.r, "torus-knot: torus minor radius");
}

wr::ParametricCurve make_curve(const CurveOpts& o) {
  if (o.name == "closed-helix") return wr::closed_helix(o.turns, o.radius, o.pitch);
  if (o.name == "circle") return wr::circle(o.radius);
  if (o.name == "ellipse") return wr::ellipse(o.a, o.b);
  if (o.name == "torus-knot") return wr::torus_knot(o.p, o.q, o.R, o.r);
  throw std::invalid_argument("unknown generator: " + o.name);
}

// Parses a generator spec string like "closed-helix turns=3 radius=1 pitch=0.33"
// (the format written into polygon file metadata).
wr::ParametricCurve curve_from_spec(const std::string& spec) {
  std::istringstream is(spec);
  CurveOpts o;
  is >> o.name;
  std::string kv;
  while (is >> kv) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = kv.substr(0, eq);
    const double value = std::stod(kv.substr(eq + 1));
    if (key == "turns") o.turns = static_cast<int>(value);
    else if (key == "radius") o.radius = value;
    else if (key == "pitch") o.pitch = value;
    else if (key == "a") o.a = value;
    else if (key == "b") o.b = value;
    else if (key == "p") o.p = static_cast<int>(value);
    else if (key == "q") o.q = static_cast<int>(value);
    else if (key == "R") o.R = value;
    else if (key == "r") o.r = value;
  }
  return make_curve(o);
}

// Helical-region derivative bounds for the closed helix (the planar closure
// contributes nothing): closed-form ceilings valid for any radius, equal to
// B2 = B3 = 1 at unit radius.
wr::DerivativeBounds helix_region_bounds(const CurveOpts& o) {
  const double c = std::cos(o.pitch);
  wr::DerivativeBounds b;
  b.B1 = 1.0;
  b.B2 = std::max(1.0, c * c) / o.radius;
  b.B3 = std::max(1.0, c * c * c) / (o.radius * o.radius);
  b.B4 = std::max(1.0, c * c * c * c) / (o.radius * o.radius * o.radius);
  b.provenance = wr::DerivativeBounds::Provenance::kAnalytic;
  return b;
}

struct BoundsFlags {
  double b1 = 0, b2 = 0, b3 = 0, b4 = 0;
  bool any() const { return b1 > 0 || b2 > 0 || b3 > 0 || b4 > 0; }
};

void add_bounds_flags(CLI::App* cmd, BoundsFlags& f) {
  cmd->add_option("--b1", f.b1, "derivative bound B1 (overrides estimation)");
  cmd->add_option("--b2", f.b2, "derivative bound B2");
  cmd->add_option("--b3", f.b3, "derivative bound B3");
  cmd->add_option("--b4", f.b4, "derivative bound B4");
}

wr::DerivativeBounds resolve_bounds(const BoundsFlags& f, const CurveOpts& curve_opts,
                                    const wr::ParametricCurve* curve) {
  wr::DerivativeBounds b;
  if (curve_opts.name == "closed-helix") {
    b = helix_region_bounds(curve_opts);
  } else if (curve != nullptr) {
    b = wr::estimate_derivative_bounds(*curve);
  } else if (!f.any()) {
    throw std::invalid_argument(
        "derivative bounds required: pass --b1..--b4 or a --curve to estimate from");
  }
  if (f.b1 > 0) b.B1 = f.b1;
  if (f.b2 > 0) b.B2 = f.b2;
  if (f.b3 > 0) b.B3 = f.b3;
  if (f.b4 > 0) b.B4 = f.b4;
  return b;
}

std::string inputs_digest(const wr::PolygonalCurve& p) {
  std::ostringstream os;
  os << "polygon n=" << p.size() << " x=" << std::setprecision(6)
     << wr::max_edge_length(p);
  return os.str();
}

void emit(const wr::RunReport& rep, bool json) {
  if (json) {
    std::cout << rep.to_json() << "\n";
  } else {
    std::cout << rep.to_text();
  }
}

// Picks an inscription whose max edge length is as close as possible to x.
wr::PolygonalCurve inscribe_for_edge_length(const wr::ParametricCurve& c, double x) {
  int n = std::max(3, static_cast<int>(std::lround(c.period() / x)));
  double best_diff = std::numeric_limits<double>::infinity();
  int best_n = n;
  for (int cand = std::max(3, n - 2); cand <= n + 2; ++cand) {
    const double got = wr::max_edge_length(wr::inscribe(c, cand));
    if (std::fabs(got - x) < best_diff) {
      best_diff = std::fabs(got - x);
      best_n = cand;
    }
  }
  return wr::inscribe(c, best_n);
}

int cmd_generate(const CurveOpts& curve_opts, int inscribe_n, double edge_length,
                 int samples, const std::string& out) {
  const wr::ParametricCurve c = make_curve(curve_opts);
  if (inscribe_n > 0 || edge_length > 0) {
    const wr::PolygonalCurve poly = inscribe_n > 0
                                         ? wr::inscribe(c, inscribe_n)
                                         : inscribe_for_edge_length(c, edge_length);
    wr::write_polygon_file(out, poly, {{"generator", c.name()}});
    std::cout << "wrote " << poly.size() << "-vertex polygon to " << out << "\n";
    return kExitOk;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot open " + out);
  f << "# curve v1\n# generator: " << c.name() << "\n# derivatives: "
    << (c.analytic_derivatives() ? "analytic" : "estimated") << "\n# period: "
    << std::setprecision(17) << c.period() << "\n";
  for (int i = 0; i < samples; ++i) {
    const double t = c.period() * i / samples;
    const wr::Vec3 p = c.position(t);
    f << std::setprecision(17) << t << ' ' << p.x << ' ' << p.y << ' ' << p.z << "\n";
  }
  std::cout << "wrote " << samples << " curve samples to " << out << "\n";
  return kExitOk;
}

int cmd_writhe(const std::string& polygon_path, const CurveOpts& curve_opts,
               bool have_curve, bool oracle, bool certify, const BoundsFlags& bflags,
               double tolerance, bool json) {
  const auto start = std::chrono::steady_clock::now();
  wr::RunReport rep;
  rep.command = "writhe";
  int exit_code = kExitOk;

  if (!polygon_path.empty()) {
    wr::PolygonFile pf = wr::read_polygon_file(polygon_path);
    rep.inputs = polygon_path + " (" + inputs_digest(pf.curve) + ")";
    rep.results["writhe_polygonal"] = wr::writhe_polygonal(pf.curve);
    rep.results["n"] = pf.curve.size();
    rep.results["max_edge_length"] = wr::max_edge_length(pf.curve);
    if (oracle) {
      const double o = wr::writhe_polygonal_quadrature(pf.curve, 1e-10);
      rep.results["writhe_oracle_quadrature"] = o;
      rep.results["oracle_difference"] =
          std::fabs(o - rep.results["writhe_polygonal"]);
    }
    if (certify) {
      std::unique_ptr<wr::ParametricCurve> curve;
      std::string gen = have_curve ? "" : pf.metadata.count("generator")
                                              ? pf.metadata.at("generator")
                                              : "";
      if (have_curve) {
        curve = std::make_unique<wr::ParametricCurve>(make_curve(curve_opts));
      } else if (!gen.empty()) {
        curve = std::make_unique<wr::ParametricCurve>(curve_from_spec(gen));
      }
      CurveOpts effective = curve_opts;
      if (!have_curve && !gen.empty()) {
        std::istringstream is(gen);
        is >> effective.name;
      }
      wr::DerivativeBounds b =
          bflags.any() && !have_curve && gen.empty()
              ? resolve_bounds(bflags, effective, nullptr)
              : resolve_bounds(bflags, effective, curve.get());
      rep.certificate = wr::error_bound(pf.curve.size(),
                                        wr::max_edge_length(pf.curve), b);
      if (!rep.certificate->valid) exit_code = kExitHypothesisFailure;
    }
  } else if (have_curve) {
    const wr::ParametricCurve c = make_curve(curve_opts);
    rep.inputs = c.name();
    wr::QuadratureSpec q;
    if (tolerance > 0) q.rel_tolerance = tolerance;
    rep.results["writhe_quadrature"] = wr::writhe_smooth_quadrature(c, q);
  } else {
    throw std::invalid_argument("writhe: give a polygon file or --curve");
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(rep, json);
  return exit_code;
}

int cmd_delta(const std::string& polygon_path, const CurveOpts& curve_opts,
              bool have_curve, int samples_per_span, bool json) {
  const auto start = std::chrono::steady_clock::now();
  wr::PolygonFile pf = wr::read_polygon_file(polygon_path);
  if (!pf.curve.has_params()) {
    throw std::invalid_argument(
        "delta: polygon file lacks inscription parameters (see generate --inscribe)");
  }
  std::string spec = have_curve ? "" : pf.metadata.count("generator")
                                           ? pf.metadata.at("generator")
                                           : "";
  if (!have_curve && spec.empty()) {
    throw std::invalid_argument("delta: no --curve and no generator metadata");
  }
  const wr::ParametricCurve c =
      have_curve ? make_curve(curve_opts) : curve_from_spec(spec);

  wr::RunReport rep;
  rep.command = "delta";
  rep.inputs = polygon_path + " vs " + c.name();
  int exit_code = kExitOk;

  const wr::HypothesisReport hyp = wr::check_hypotheses(c, pf.curve);
  if (!hyp.all_pass()) {
    rep.notes["warning"] = "hypothesis failure; decomposition attempted anyway";
    exit_code = kExitHypothesisFailure;
  }
  const wr::CornerDecomposition dec =
      wr::delta_writhe_polygonal(c, pf.curve, samples_per_span);
  const double wr_poly = wr::writhe_polygonal(pf.curve);
  const double wr_smooth = wr::writhe_smooth_quadrature(c);
  rep.results["delta_decomposition"] = dec.total;
  rep.results["writhe_polygonal"] = wr_poly;
  rep.results["writhe_smooth"] = wr_smooth;
  rep.results["delta_direct"] = wr_poly - wr_smooth;
  rep.results["agreement"] = std::fabs(dec.total - (wr_poly - wr_smooth));
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(rep, json);
  if (!json) std::cout << wr::hypothesis_report_to_text(hyp);
  return exit_code;
}

int cmd_convergence(const CurveOpts& curve_opts, std::vector<int> ns,
                    std::vector<double> edge_lengths, const BoundsFlags& bflags,
                    const std::string& out_prefix, bool json) {
  const auto start = std::chrono::steady_clock::now();
  const wr::ParametricCurve c = make_curve(curve_opts);

  double wr_ref;
  std::string ref_kind;
  if (curve_opts.name == "closed-helix") {
    wr_ref = wr::closed_helix_exact_writhe(curve_opts.turns, curve_opts.pitch);
    ref_kind = "analytic";
  } else if (curve_opts.name == "circle" || curve_opts.name == "ellipse") {
    wr_ref = 0.0;
    ref_kind = "analytic (planar)";
  } else {
    wr::QuadratureSpec tight;
    tight.rel_tolerance = 1e-8;  // 10x tighter than default
    wr_ref = wr::writhe_smooth_quadrature(c, tight);
    ref_kind = "numeric (tightened quadrature)";
  }
  const wr::DerivativeBounds bounds = resolve_bounds(bflags, curve_opts, &c);

  std::vector<wr::PolygonalCurve> polys;
  if (!edge_lengths.empty()) {
    for (double x : edge_lengths) polys.push_back(inscribe_for_edge_length(c, x));
  } else {
    for (int n : ns) polys.push_back(wr::inscribe(c, n));
  }

  std::ostringstream table, loglog;
  table << "n\tWr(C_n)\t|Wr(C_n)-Wr(C)|\tx\talpha*n*x^3\thypothesis\n";
  loglog << "n\tactual_error\tbound\n";
  std::vector<double> logn, logerr;
  wr::RunReport rep;
  rep.command = "convergence";
  rep.inputs = c.name() + " reference=" + ref_kind;
  for (const auto& poly : polys) {
    const int n = poly.size();
    const double x = wr::max_edge_length(poly);
    const double w = wr::writhe_polygonal(poly);
    const double err = std::fabs(w - wr_ref);
    const wr::ErrorCertificate cert = wr::error_bound(n, x, bounds);
    table << std::setprecision(6) << n << '\t' << w << '\t' << err << '\t' << x << '\t'
          << cert.bound << '\t' << (cert.valid ? "pass" : "FAIL") << "\n";
    loglog << std::setprecision(10) << n << '\t' << err << '\t' << cert.bound << "\n";
    if (err > 1e-13) {
      logn.push_back(std::log(static_cast<double>(n)));
      logerr.push_back(std::log(err));
    }
    std::ostringstream key;
    key << "Wr_n" << n;
    rep.results[key.str()] = w;
  }
  rep.results["reference_writhe"] = wr_ref;

  if (logn.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double m = static_cast<double>(logn.size());
    for (std::size_t i = 0; i < logn.size(); ++i) {
      sx += logn[i];
      sy += logerr[i];
      sxx += logn[i] * logn[i];
      sxy += logn[i] * logerr[i];
    }
    rep.results["convergence_order_slope"] = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  } else {
    rep.notes["convergence_order"] = "degenerate: errors at rounding level";
  }

  if (!out_prefix.empty()) {
    std::ofstream t(out_prefix + "_table.tsv"), l(out_prefix + "_loglog.tsv");
    if (!t || !l) throw std::runtime_error("cannot write output files " + out_prefix);
    t << table.str();
    l << loglog.str();
    rep.notes["table_file"] = out_prefix + "_table.tsv";
    rep.notes["loglog_file"] = out_prefix + "_loglog.tsv";
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (json) {
    std::cout << rep.to_json() << "\n";
  } else {
    std::cout << table.str() << "\n" << rep.to_text();
  }
  return kExitOk;
}

int cmd_check(const std::string& polygon_path, const CurveOpts& curve_opts,
              bool have_curve, double tube_radius, bool json) {
  const auto start = std::chrono::steady_clock::now();
  wr::PolygonFile pf = wr::read_polygon_file(polygon_path);
  std::string spec = have_curve ? "" : pf.metadata.count("generator")
                                           ? pf.metadata.at("generator")
                                           : "";
  if (!have_curve && spec.empty()) {
    throw std::invalid_argument("check: no --curve and no generator metadata");
  }
  const wr::ParametricCurve c =
      have_curve ? make_curve(curve_opts) : curve_from_spec(spec);
  const wr::HypothesisReport hyp = wr::check_hypotheses(c, pf.curve, 512, tube_radius);

  wr::RunReport rep;
  rep.command = "check";
  rep.inputs = polygon_path + " vs " + c.name();
  rep.results["min_corner_angle"] = hyp.min_corner_angle;
  rep.results["max_tangent_angle"] = hyp.max_tangent_angle;
  rep.results["max_edge_length"] = hyp.max_edge;
  rep.results["B2"] = hyp.B2;
  rep.results["lemma2_bound"] = hyp.lemma2_bound;
  rep.results["ribbon_max_deviation"] = hyp.ribbon.max_deviation;
  rep.results["tube_radius"] = hyp.ribbon.tube_radius;
  rep.results["all_pass"] = hyp.all_pass() ? 1.0 : 0.0;

  if (pf.curve.has_params()) {
    try {
      const wr::LemmaReport l2 = wr::lemma_tangent_angle(c, pf.curve);
      rep.results["lemma2_margin"] = l2.margin;
      const wr::LemmaReport l1 =
          wr::lemma_chord_bounds(c, 1.01 * wr::max_edge_length(pf.curve));
      rep.results["lemma1_margin"] = l1.margin;
    } catch (const std::domain_error& e) {
      rep.notes["lemma_regime"] = e.what();
    }
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(rep, json);
  if (!json) std::cout << wr::hypothesis_report_to_text(hyp);
  return hyp.all_pass() ? kExitOk : kExitHypothesisFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"writhe: writhing numbers of space curves, exactly for polygons, "
               "by quadrature for smooth curves, with certified approximation error"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a sampled curve or inscribed polygon");
  CurveOpts gen_curve;
  add_curve_flags(gen, gen_curve, /*required=*/true);
  int gen_inscribe = 0, gen_samples = 1024;
  double gen_edge_length = 0.0;
  std::string gen_out;
  gen->add_option("--inscribe", gen_inscribe, "write an n-vertex inscribed polygon");
  gen->add_option("--edge-length", gen_edge_length,
                  "inscribe targeting this max edge length");
  gen->add_option("--samples", gen_samples, "samples for curve output");
  gen->add_option("--out", gen_out, "output path")->required();

  // writhe
  auto* wrc = app.add_subcommand("writhe", "compute the writhe of a polygon or curve");
  CurveOpts wr_curve;
  add_curve_flags(wrc, wr_curve, /*required=*/false);
  std::string wr_polygon;
  bool wr_oracle = false, wr_certify = false, wr_json = false;
  double wr_tol = 0.0;
  BoundsFlags wr_bounds;
  wrc->add_option("polygon", wr_polygon, "polygon file");
  wrc->add_flag("--oracle", wr_oracle, "also print the brute-force quadrature value");
  wrc->add_flag("--certify", wr_certify, "attach the error certificate");
  wrc->add_option("--tolerance", wr_tol, "quadrature relative tolerance");
  wrc->add_flag("--json", wr_json, "machine-readable output");
  add_bounds_flags(wrc, wr_bounds);

  // delta
  auto* del = app.add_subcommand("delta", "polygonal writhe-difference decomposition");
  CurveOpts del_curve;
  add_curve_flags(del, del_curve, /*required=*/false);
  std::string del_polygon;
  int del_span = 64;
  bool del_json = false;
  del->add_option("polygon", del_polygon, "inscribed polygon file")->required();
  del->add_option("--samples-per-span", del_span, "tantrix samples per edge span");
  del->add_flag("--json", del_json, "machine-readable output");

  // convergence
  auto* conv = app.add_subcommand("convergence", "error/bound table over inscriptions");
  CurveOpts conv_curve;
  add_curve_flags(conv, conv_curve, /*required=*/true);
  std::vector<int> conv_n;
  std::vector<double> conv_x;
  std::string conv_out;
  bool conv_json = false;
  BoundsFlags conv_bounds;
  conv->add_option("--n", conv_n, "inscription sizes")->delimiter(',');
  conv->add_option("--edge-lengths", conv_x, "target max edge lengths")->delimiter(',');
  conv->add_option("--out", conv_out, "output file prefix for table and log-log data");
  conv->add_flag("--json", conv_json, "machine-readable output");
  add_bounds_flags(conv, conv_bounds);

  // check
  auto* chk = app.add_subcommand("check", "hypothesis and lemma report");
  CurveOpts chk_curve;
  add_curve_flags(chk, chk_curve, /*required=*/false);
  std::string chk_polygon;
  double chk_tube = 0.0;
  bool chk_json = false;
  chk->add_option("polygon", chk_polygon, "inscribed polygon file")->required();
  chk->add_option("--tube-radius", chk_tube, "embedded-tube radius override");
  chk->add_flag("--json", chk_json, "machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      return cmd_generate(gen_curve, gen_inscribe, gen_edge_length, gen_samples, gen_out);
    }
    if (wrc->parsed()) {
      return cmd_writhe(wr_polygon, wr_curve, !wr_curve.name.empty(), wr_oracle,
                        wr_certify, wr_bounds, wr_tol, wr_json);
    }
    if (del->parsed()) {
      return cmd_delta(del_polygon, del_curve, !del_curve.name.empty(), del_span,
                       del_json);
    }
    if (conv->parsed()) {
      if (conv_n.empty() && conv_x.empty()) {
        throw std::invalid_argument("convergence: give --n or --edge-lengths");
      }
      return cmd_convergence(conv_curve, conv_n, conv_x, conv_bounds, conv_out,
                             conv_json);
    }
    if (chk->parsed()) {
      return cmd_check(chk_polygon, chk_curve, !chk_curve.name.empty(), chk_tube,
                       chk_json);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
