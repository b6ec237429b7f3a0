#pragma once

#include <array>
#include <vector>

#include "fluxtube/vec3.hpp"

namespace fluxtube {

// Locus of the apex of every equilateral triangle erected on a segment: the
// circle centered at the segment midpoint, with the segment as axis and radius
// (sqrt(3)/2) * length.
struct MelzakCircle {
  Vec3 center;
  Vec3 axis;  // unit
  double radius = 0.0;
  Vec3 e1, e2;  // orthonormal in-plane basis, e1 x e2 = axis

  Vec3 point(double theta) const;
  Vec3 tangent(double theta) const;  // d point / d theta
};

// Throws SolverError(DegenerateSegment) when a == b.
MelzakCircle melzak_circle(const Vec3& a, const Vec3& b);

// A critical point of |P(theta) - Q(phi)| over the torus of circle pairs.
struct CircleStationaryPoint {
  double theta = 0.0;
  double phi = 0.0;
  Vec3 p;
  Vec3 q;
  double distance = 0.0;
};

// Degree-8 compatibility polynomial in u = tan(phi/2), coefficients in
// ascending powers. Its real roots (plus u = infinity when the leading
// coefficient vanishes) are the phi values of the stationary pairs.
std::array<double, 9> stationary_resultant(const MelzakCircle& c1, const MelzakCircle& c2);

// All stationary pairs of the circle-to-circle distance, found from the real
// roots of the resultant and back-substitution for theta, sorted by distance.
// Coaxial circles have a continuum of stationary pairs; they are represented
// by one nearest and one farthest pair. Throws SolverError(RootFindingFailure)
// if the root isolation is inconsistent.
std::vector<CircleStationaryPoint> circle_stationary_points(const MelzakCircle& c1,
                                                            const MelzakCircle& c2);

}  // namespace fluxtube
