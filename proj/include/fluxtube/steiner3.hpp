#pragma once

#include <array>
#include <utility>

#include "fluxtube/vec3.hpp"

namespace fluxtube {

// Side lengths (a1 opposite v1, ...) and interior angles (alpha_i at v_i).
struct Triangle {
  Vec3 v1, v2, v3;
  double a1 = 0.0, a2 = 0.0, a3 = 0.0;
  double alpha1 = 0.0, alpha2 = 0.0, alpha3 = 0.0;
};

Triangle make_triangle(const Vec3& v1, const Vec3& v2, const Vec3& v3);

enum class FermatBranch { Interior, CollapsedToVertex };

// Minimal three-leg network joining three points at a single junction.
struct FermatResult {
  Vec3 junction;
  std::array<double, 3> legs{};  // |s v_i|
  double length = 0.0;           // V3
  FermatBranch branch = FermatBranch::Interior;
  int vertex = 0;  // 1..3 when collapsed, 0 otherwise
};

// Angles at or above 120 degrees minus this collapse the junction onto the vertex.
inline constexpr double kCollapseAngleTolerance = 1e-9;

// Fermat-Torricelli point of three points. Total for all finite inputs,
// including collinear and coincident ones.
FermatResult fermat_point(const Vec3& v1, const Vec3& v2, const Vec3& v3);

// Three-terminal tree length from the side lengths alone, valid when every
// angle is below 120 degrees:
//   V3^2 = (a1^2 + a2^2 + a3^2 + sqrt(3 (a1+a2+a3)(a1+a2-a3)(a1-a2+a3)(-a1+a2+a3))) / 2
// The square root term is 4*sqrt(3) times the Heron area. Throws
// std::invalid_argument for negative sides or a violated triangle inequality.
double v3_closed_form(double a1, double a2, double a3);

// Apexes of the two equilateral triangles erected on segment v1v2 in the plane
// through v1v2 orthogonal to the component of plane_normal normal to v1v2.
// `first` lies on the side of plane_normal x (v2 - v1); `second` is its mirror
// image across the line v1v2. Throws std::invalid_argument when v1 == v2 or the
// normal is parallel to the segment.
std::pair<Vec3, Vec3> napoleon_points(const Vec3& v1, const Vec3& v2, const Vec3& plane_normal);

}  // namespace fluxtube
