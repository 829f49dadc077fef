#include "geometry_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "errors.hpp"

namespace prp {

namespace {

const char* const kKeys[] = {
    "l0",
    "alpha_a", "alpha_b", "alpha_c",
    "anchor_a_x", "anchor_a_y",
    "anchor_b_x", "anchor_b_y",
    "anchor_c_x", "anchor_c_y",
    "platform_anchor_x", "platform_anchor_y", "platform_anchor_z",
};

bool known_key(const std::string& k) {
  for (const char* key : kKeys)
    if (k == key) return true;
  return false;
}

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Entry {
  double value;
  int line;
};

}  // namespace

RobotGeometry parse_geometry(std::istream& in) {
  std::map<std::string, Entry> seen;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (size_t hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;

    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", line_no);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ParseError("missing key before '='", line_no);
    if (!known_key(key))
      throw ParseError("unknown key '" + key + "'", line_no);
    if (seen.count(key))
      throw ParseError("duplicate key '" + key + "'", line_no);

    double parsed;
    size_t used = 0;
    try {
      parsed = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty() || !std::isfinite(parsed))
      throw ParseError("bad numeric value for '" + key + "'", line_no);
    seen[key] = {parsed, line_no};
  }

  const auto get = [&seen](const std::string& key, double fallback) {
    auto it = seen.find(key);
    return it == seen.end() ? fallback : it->second.value;
  };

  const double l0 = get("l0", 0.3);
  if (!(l0 > 0.0)) {
    throw ParseError("l0 must be positive",
                     seen.count("l0") ? seen["l0"].line : 0);
  }
  if (seen.size() == size_t(seen.count("l0")))
    return default_geometry(l0);  // keeps the exact default constants

  constexpr double kPi = std::numbers::pi;
  const double alpha_a = get("alpha_a", kPi / 3);
  const std::array<double, 3> alpha{
      alpha_a,
      get("alpha_b", alpha_a + 2 * kPi / 3),
      get("alpha_c", alpha_a - 2 * kPi / 3),
  };

  const double s3 = std::sqrt(3.0);
  const double e = 0.5 * s3 * l0;
  const std::array<Vec3, 3> anchors{
      Vec3{get("anchor_a_x", 0.0), get("anchor_a_y", -l0), 0.0},
      Vec3{get("anchor_b_x", e), get("anchor_b_y", 0.5 * l0), 0.0},
      Vec3{get("anchor_c_x", -e), get("anchor_c_y", 0.5 * l0), 0.0},
  };
  const Vec3 platform_anchor{
      get("platform_anchor_x", 0.0),
      get("platform_anchor_y", 0.5 * l0),
      get("platform_anchor_z", -s3 * l0 / 6.0),
  };
  return make_geometry(l0, alpha, anchors, platform_anchor);
}

RobotGeometry load_geometry(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open geometry file: " + path);
  return parse_geometry(in);
}

}  // namespace prp
