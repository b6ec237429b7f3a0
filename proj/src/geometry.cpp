#include "fluxtube/geometry.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fluxtube {

JacobiCoords jacobi(const TetraConfig& c) {
  return {c.v2 - c.v1, c.v4 - c.v3, (c.v3 + c.v4 - c.v1 - c.v2) * 0.5};
}

TetraConfig from_jacobi(const JacobiCoords& j) {
  // Pair midpoints sit at -z/2 and +z/2 so the centroid is the origin.
  const Vec3 h = j.z * -0.5;
  const Vec3 k = j.z * 0.5;
  return {h - j.x * 0.5, h + j.x * 0.5, k - j.y * 0.5, k + j.y * 0.5};
}

bool is_finite(const TetraConfig& c) {
  return is_finite(c.v1) && is_finite(c.v2) && is_finite(c.v3) && is_finite(c.v4);
}

void require_finite(const TetraConfig& c) {
  if (!is_finite(c)) throw std::invalid_argument("configuration has non-finite coordinates");
}

double distance(const TetraConfig& c, int i, int j) {
  const auto p = c.points();
  return distance(p.at(i - 1), p.at(j - 1));
}

double diameter(const TetraConfig& c) {
  const auto p = c.points();
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) d = std::max(d, distance(p[i], p[j]));
  return d;
}

TetraConfig translated(const TetraConfig& c, const Vec3& t) {
  return {c.v1 + t, c.v2 + t, c.v3 + t, c.v4 + t};
}

TetraConfig scaled(const TetraConfig& c, double f) {
  return {c.v1 * f, c.v2 * f, c.v3 * f, c.v4 * f};
}

TetraConfig transformed(const TetraConfig& c, const Mat3& r) {
  return {r * c.v1, r * c.v2, r * c.v3, r * c.v4};
}

TetraConfig normalized_to_unit_diameter(const TetraConfig& c) {
  const double d = diameter(c);
  if (!(d > 0.0)) return c;
  const Vec3 centroid = (c.v1 + c.v2 + c.v3 + c.v4) * 0.25;
  return scaled(translated(c, -centroid), 1.0 / d);
}

Mat3 rotation_about(const Vec3& axis, double angle) {
  const Vec3 n = normalized(axis);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const double t = 1.0 - c;
  Mat3 r;
  r.m = {{{t * n.x * n.x + c, t * n.x * n.y - s * n.z, t * n.x * n.z + s * n.y},
          {t * n.x * n.y + s * n.z, t * n.y * n.y + c, t * n.y * n.z - s * n.x},
          {t * n.x * n.z - s * n.y, t * n.y * n.z + s * n.x, t * n.z * n.z + c}}};
  return r;
}

Mat3 random_rotation(std::uint64_t seed) {
  // Normalized Gaussian 4-vector is a uniform unit quaternion.
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  double w = g(rng), x = g(rng), y = g(rng), z = g(rng);
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  w /= n;
  x /= n;
  y /= n;
  z /= n;
  Mat3 r;
  r.m = {{{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
          {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
          {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
  return r;
}

TetraConfig random_config(std::uint64_t seed, double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw std::invalid_argument("random_config: scale must be positive and finite");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-scale, scale);
  TetraConfig c;
  for (Vec3* p : {&c.v1, &c.v2, &c.v3, &c.v4}) {
    p->x = u(rng);
    p->y = u(rng);
    p->z = u(rng);
  }
  return c;
}

void to_json(nlohmann::json& j, const Vec3& v) { j = nlohmann::json::array({v.x, v.y, v.z}); }

void from_json(const nlohmann::json& j, Vec3& v) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("point must be an array of three numbers");
  for (const auto& e : j)
    if (!e.is_number()) throw std::invalid_argument("point coordinates must be numbers");
  v = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void to_json(nlohmann::json& j, const TetraConfig& c) {
  j = nlohmann::json{{"v1", c.v1}, {"v2", c.v2}, {"v3", c.v3}, {"v4", c.v4}};
}

void from_json(const nlohmann::json& j, TetraConfig& c) {
  if (!j.is_object()) throw std::invalid_argument("configuration must be a JSON object");
  for (const char* key : {"v1", "v2", "v3", "v4"})
    if (!j.contains(key)) throw std::invalid_argument(std::string("configuration lacks ") + key);
  c.v1 = j.at("v1").get<Vec3>();
  c.v2 = j.at("v2").get<Vec3>();
  c.v3 = j.at("v3").get<Vec3>();
  c.v4 = j.at("v4").get<Vec3>();
}

TetraConfig parse_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed configuration JSON: ") + e.what());
  }
  auto c = doc.get<TetraConfig>();
  require_finite(c);
  return c;
}

TetraConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open configuration file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace fluxtube
