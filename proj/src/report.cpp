#include "wr/report.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace wr {

using nlohmann::json;

namespace {

json certificate_to_json(const ErrorCertificate& c) {
  json j;
  j["n"] = c.n;
  j["x"] = c.x;
  j["alpha"] = c.alpha;
  j["bound"] = c.bound;
  j["valid"] = c.valid;
  j["tail_note"] = c.tail_note;
  j["hypotheses"] = json::array();
  for (const auto& h : c.hypotheses) {
    j["hypotheses"].push_back(
        {{"name", h.name}, {"pass", h.pass}, {"value", h.value}, {"threshold", h.threshold}});
  }
  j["regions"] = json::array();
  for (const auto& r : c.regions) {
    j["regions"].push_back({{"n", r.n},
                            {"x", r.x},
                            {"B2", r.B2},
                            {"B3", r.B3},
                            {"alpha", r.alpha},
                            {"bound", r.bound},
                            {"planar", r.planar},
                            {"pass", r.pass}});
  }
  return j;
}

ErrorCertificate certificate_from_json(const json& j) {
  ErrorCertificate c;
  c.n = j.at("n").get<long>();
  c.x = j.at("x").get<double>();
  c.alpha = j.at("alpha").get<double>();
  c.bound = j.at("bound").get<double>();
  c.valid = j.at("valid").get<bool>();
  c.tail_note = j.at("tail_note").get<std::string>();
  for (const auto& h : j.at("hypotheses")) {
    c.hypotheses.push_back({h.at("name").get<std::string>(), h.at("pass").get<bool>(),
                            h.at("value").get<double>(), h.at("threshold").get<double>()});
  }
  for (const auto& r : j.at("regions")) {
    ErrorCertificate::Region reg;
    reg.n = r.at("n").get<long>();
    reg.x = r.at("x").get<double>();
    reg.B2 = r.at("B2").get<double>();
    reg.B3 = r.at("B3").get<double>();
    reg.alpha = r.at("alpha").get<double>();
    reg.bound = r.at("bound").get<double>();
    reg.planar = r.at("planar").get<bool>();
    reg.pass = r.at("pass").get<bool>();
    c.regions.push_back(reg);
  }
  return c;
}

}  // namespace

std::string RunReport::to_json() const {
  json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["tool_version"] = tool_version;
  j["results"] = results;
  j["notes"] = notes;
  j["elapsed_seconds"] = elapsed_seconds;
  if (certificate) j["certificate"] = certificate_to_json(*certificate);
  return j.dump(2);
}

RunReport RunReport::from_json(const std::string& text) {
  const json j = json::parse(text);
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs").get<std::string>();
  r.tool_version = j.at("tool_version").get<std::string>();
  r.results = j.at("results").get<std::map<std::string, double>>();
  r.notes = j.at("notes").get<std::map<std::string, std::string>>();
  r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  if (j.contains("certificate")) r.certificate = certificate_from_json(j.at("certificate"));
  return r;
}

std::string RunReport::to_text() const {
  std::ostringstream os;
  os << "$ " << command << "\n";
  if (!inputs.empty()) os << "inputs: " << inputs << "\n";
  os << std::setprecision(6);
  for (const auto& [key, value] : results) {
    os << "  " << key << " = " << value << "\n";
  }
  for (const auto& [key, value] : notes) {
    os << "  " << key << ": " << value << "\n";
  }
  if (certificate) os << certificate_to_text(*certificate);
  os << "  elapsed: " << elapsed_seconds << " s\n";
  return os.str();
}

std::string certificate_to_text(const ErrorCertificate& cert) {
  std::ostringstream os;
  os << std::setprecision(6);
  os << "  certificate: " << (cert.valid ? "VALID" : "INVALID (hypothesis failure)")
     << "\n";
  os << "    n = " << cert.n << ", x = " << cert.x << "\n";
  if (cert.regions.empty()) {
    os << "    alpha = " << cert.alpha << " (= B2*(5*B2^2 + B3))\n";
  }
  os << "    bound alpha*n*x^3 = " << cert.bound << "\n";
  os << "    note: " << cert.tail_note << "\n";
  for (const auto& h : cert.hypotheses) {
    os << "    hypothesis " << h.name << ": " << (h.pass ? "pass" : "FAIL") << " ("
       << h.value << " vs " << h.threshold << ")\n";
  }
  for (std::size_t i = 0; i < cert.regions.size(); ++i) {
    const auto& r = cert.regions[i];
    os << "    region " << i << ": n=" << r.n << " x=" << r.x;
    if (r.planar) {
      os << " planar (contributes nothing)\n";
    } else {
      os << " B2=" << r.B2 << " B3=" << r.B3 << " alpha=" << r.alpha
         << " bound=" << r.bound << (r.pass ? "" : " [hypothesis FAIL]") << "\n";
    }
  }
  return os.str();
}

std::string hypothesis_report_to_text(const HypothesisReport& rep) {
  std::ostringstream os;
  os << std::setprecision(6);
  auto line = [&os](const char* name, bool pass, double value, double threshold,
                    const char* rel) {
    os << "  " << name << ": " << (pass ? "pass" : "FAIL") << " (" << value << " " << rel
       << " " << threshold << ")\n";
  };
  line("corner angles > pi/2", rep.corner_angles_pass, rep.min_corner_angle, M_PI / 2, ">");
  line("tangent angle < pi/2", rep.tangent_angle_pass, rep.max_tangent_angle, M_PI / 2, "<");
  line("edge length 1/x > 5*B2", rep.edge_length_pass, 1.0 / rep.max_edge, 5.0 * rep.B2,
       ">");
  line("tangent angle < 0.51005*K*x", rep.lemma2_pass, rep.max_tangent_angle,
       rep.lemma2_bound, "<");
  os << "  ribbon embedded (heuristic): " << (rep.ribbon.pass ? "pass" : "FAIL")
     << " (max deviation " << rep.ribbon.max_deviation << " vs tube radius "
     << rep.ribbon.tube_radius << ")\n";
  os << "  verification: sampled grid check, not a proof\n";
  return os.str();
}

}  // namespace wr
