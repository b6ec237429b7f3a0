#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace fluxtube::detail {

using Point2 = std::array<double, 2>;

struct FixedPointResult {
  Point2 z{};
  int sweeps = 0;
  bool converged = false;
};

// Iterates z <- sweep(z) until the change drops below tol * max(1, |z|).
// Every second sweep an Irons-Tuck (vector Aitken) extrapolation is tried and
// kept only if it lowers `objective`, which the sweep itself never increases.
template <class Sweep, class Objective>
FixedPointResult accelerated_fixed_point(Sweep&& sweep, Objective&& objective, Point2 z,
                                         double tol, int max_sweeps) {
  auto close = [tol](const Point2& a, const Point2& b) {
    const double scale = std::max({1.0, std::abs(b[0]), std::abs(b[1])});
    return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1])) < tol * scale;
  };

  int sweeps = 0;
  while (sweeps < max_sweeps) {
    const Point2 z1 = sweep(z);
    ++sweeps;
    if (close(z1, z)) return {z1, sweeps, true};
    if (sweeps >= max_sweeps) {
      z = z1;
      break;
    }
    const Point2 z2 = sweep(z1);
    ++sweeps;
    if (close(z2, z1)) return {z2, sweeps, true};

    const Point2 d1{z1[0] - z[0], z1[1] - z[1]};
    const Point2 d2{z2[0] - z1[0], z2[1] - z1[1]};
    const Point2 dd{d2[0] - d1[0], d2[1] - d1[1]};
    const double den = dd[0] * dd[0] + dd[1] * dd[1];
    z = z2;
    if (den > 0.0) {
      const double w = (d2[0] * dd[0] + d2[1] * dd[1]) / den;
      const Point2 za{z2[0] - w * d2[0], z2[1] - w * d2[1]};
      if (std::isfinite(za[0]) && std::isfinite(za[1]) && objective(za) < objective(z2)) z = za;
    }
  }
  return {z, sweeps, false};
}

}  // namespace fluxtube::detail
