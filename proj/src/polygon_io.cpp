#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "wr/curves.hpp"

namespace wr {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_polygon_file(const std::string& path, const PolygonalCurve& p,
                        const std::map<std::string, std::string>& metadata) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_polygon_file: cannot open " + path);
  out << "# polygon v1\n";
  for (const auto& [key, value] : metadata) {
    out << "# " << key << ": " << value << "\n";
  }
  if (p.has_params()) {
    out << "# params:";
    for (double t : p.params()) out << ' ' << fmt_double(t);
    out << "\n";
  }
  for (const auto& v : p.vertices()) {
    out << fmt_double(v.x) << ' ' << fmt_double(v.y) << ' ' << fmt_double(v.z) << "\n";
  }
  if (!out) throw std::runtime_error("write_polygon_file: write failed for " + path);
}

PolygonFile read_polygon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_polygon_file: cannot open " + path);
  std::map<std::string, std::string> metadata;
  std::vector<double> params;
  std::vector<Vec3> verts;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      const auto colon = body.find(':');
      if (colon == std::string::npos) continue;  // plain comment
      std::string key = body.substr(0, colon);
      std::string value = body.substr(colon + 1);
      auto strip = [](std::string& s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t\r");
        s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
      };
      strip(key);
      strip(value);
      if (key == "params") {
        std::istringstream is(value);
        double t;
        while (is >> t) params.push_back(t);
      } else {
        metadata[key] = value;
      }
      continue;
    }
    std::istringstream is(line);
    Vec3 v;
    if (!(is >> v.x >> v.y >> v.z)) {
      std::ostringstream os;
      os << "read_polygon_file: bad vertex line " << lineno << " in " << path;
      throw std::runtime_error(os.str());
    }
    verts.push_back(v);
  }
  if (!params.empty() && params.size() != verts.size()) {
    throw std::runtime_error("read_polygon_file: params/vertex count mismatch in " + path);
  }
  return PolygonFile{PolygonalCurve(std::move(verts), std::move(params)),
                     std::move(metadata)};
}

}  // namespace wr
