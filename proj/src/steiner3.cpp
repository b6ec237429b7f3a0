#include "fluxtube/steiner3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fluxtube {
namespace {

constexpr double kTwoThirdsPi = 2.0 * std::numbers::pi / 3.0;

double angle_at(const Vec3& apex, const Vec3& a, const Vec3& b) {
  const Vec3 u = a - apex;
  const Vec3 w = b - apex;
  if (norm2(u) == 0.0 || norm2(w) == 0.0) return 0.0;
  return angle_between(u, w);
}

FermatResult collapsed(const std::array<Vec3, 3>& v, int i) {
  FermatResult r;
  r.junction = v[i];
  r.branch = FermatBranch::CollapsedToVertex;
  r.vertex = i + 1;
  for (int k = 0; k < 3; ++k) r.legs[k] = distance(v[k], v[i]);
  r.length = r.legs[0] + r.legs[1] + r.legs[2];
  return r;
}

}  // namespace

Triangle make_triangle(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
  Triangle t{v1, v2, v3};
  t.a1 = distance(v2, v3);
  t.a2 = distance(v1, v3);
  t.a3 = distance(v1, v2);
  t.alpha1 = angle_at(v1, v2, v3);
  t.alpha2 = angle_at(v2, v1, v3);
  t.alpha3 = angle_at(v3, v1, v2);
  return t;
}

FermatResult fermat_point(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
  const std::array<Vec3, 3> v{v1, v2, v3};

  // A coincident pair pins the junction: s = v_i is optimal for any third point.
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (v[i] == v[j]) return collapsed(v, i);

  const Triangle t = make_triangle(v1, v2, v3);
  const std::array<double, 3> alpha{t.alpha1, t.alpha2, t.alpha3};
  const int widest = static_cast<int>(std::max_element(alpha.begin(), alpha.end()) - alpha.begin());
  if (alpha[widest] >= kTwoThirdsPi - kCollapseAngleTolerance) return collapsed(v, widest);

  // Barycentric weights a_i / sin(alpha_i + 60 deg), all positive here.
  const std::array<double, 3> side{t.a1, t.a2, t.a3};
  std::array<double, 3> w{};
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    w[i] = side[i] / std::sin(alpha[i] + std::numbers::pi / 3.0);
    total += w[i];
  }
  FermatResult r;
  r.junction = (v1 * w[0] + v2 * w[1] + v3 * w[2]) / total;
  for (int k = 0; k < 3; ++k) r.legs[k] = distance(r.junction, v[k]);
  r.length = r.legs[0] + r.legs[1] + r.legs[2];
  return r;
}

double v3_closed_form(double a1, double a2, double a3) {
  if (!(a1 >= 0.0 && a2 >= 0.0 && a3 >= 0.0))
    throw std::invalid_argument("v3_closed_form: side lengths must be non-negative");
  const double longest = std::max({a1, a2, a3});
  const double slack = 1e-12 * std::max(1.0, longest);
  if (a1 > a2 + a3 + slack || a2 > a1 + a3 + slack || a3 > a1 + a2 + slack)
    throw std::invalid_argument("v3_closed_form: sides violate the triangle inequality");

  const double heron = (a1 + a2 + a3) * std::max(0.0, a1 + a2 - a3) * std::max(0.0, a1 - a2 + a3) *
                       std::max(0.0, -a1 + a2 + a3);
  return std::sqrt(0.5 * (a1 * a1 + a2 * a2 + a3 * a3 + std::sqrt(3.0 * heron)));
}

std::pair<Vec3, Vec3> napoleon_points(const Vec3& v1, const Vec3& v2, const Vec3& plane_normal) {
  const Vec3 d = v2 - v1;
  const double len = norm(d);
  if (!(len > 0.0)) throw std::invalid_argument("napoleon_points: coincident endpoints");
  const Vec3 side = cross(plane_normal, d);
  const double side_len = norm(side);
  if (!(side_len > 1e-12 * len * norm(plane_normal)))
    throw std::invalid_argument("napoleon_points: plane normal parallel to the segment");
  const Vec3 offset = side * (std::sqrt(3.0) / 2.0 * len / side_len);
  const Vec3 mid = midpoint(v1, v2);
  return {mid + offset, mid - offset};
}

}  // namespace fluxtube
