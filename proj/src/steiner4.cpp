#include "fluxtube/steiner4.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "fixed_point.hpp"

namespace fluxtube {
namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr int kMaxSweeps = 500;
constexpr double kSweepTolerance = 1e-12;
constexpr double kConsistencyTolerance = 1e-8;

double length_scale(const TetraConfig& c) {
  const double d = diameter(c);
  return d > 0.0 ? d : 1.0;
}

void require_segments(const TetraConfig& c) {
  require_finite(c);
  if (c.v1 == c.v2 || c.v3 == c.v4)
    throw SolverError(SolverErrc::DegenerateSegment, "coincident quark or antiquark pair");
}

// Root of a continuous increasing function on the real line.
template <class F>
double solve_increasing(F&& f) {
  double lo = -1.0;
  double hi = 1.0;
  double flo = f(lo);
  double fhi = f(hi);
  while (flo > 0.0 && lo > -1e15) {
    hi = lo;
    fhi = flo;
    lo *= 4.0;
    flo = f(lo);
  }
  while (fhi < 0.0 && hi < 1e15) {
    lo = hi;
    flo = fhi;
    hi *= 4.0;
    fhi = f(hi);
  }
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo > 0.0 || fhi < 0.0) return flo > 0.0 ? lo : hi;
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (a + b);
}

// Tree from the two axis crossings p, q and the distances from them to the
// Melzak circles measured along the line pq.
SteinerTree tree_through_axes(const TetraConfig& c, const Vec3& p, const Vec3& q, double rho12,
                              double rho34) {
  const Vec3 pq = q - p;
  const double len = norm(pq);
  if (!(len > 1e-14 * length_scale(c))) {
    SteinerTree t;
    t.s1 = t.s2 = p;
    t.length = rho12 + rho34;
    t.kind = TreeKind::NonGenuine;
    return t;
  }
  const Vec3 u = pq / len;
  return assemble_tree(c, p - u * rho12, q + u * rho34);
}

}  // namespace

std::string_view to_string(SolverErrc code) {
  switch (code) {
    case SolverErrc::NoConvergence: return "NoConvergence";
    case SolverErrc::DegenerateSegment: return "DegenerateSegment";
    case SolverErrc::ParallelLines: return "ParallelLines";
    case SolverErrc::RootFindingFailure: return "RootFindingFailure";
    case SolverErrc::NotCoplanar: return "NotCoplanar";
  }
  return "Unknown";
}

std::string_view to_string(TreeKind kind) {
  switch (kind) {
    case TreeKind::Genuine: return "Genuine";
    case TreeKind::SingleJunction: return "SingleJunction";
    case TreeKind::FormalNegativeEdge: return "FormalNegativeEdge";
    case TreeKind::NonGenuine: return "NonGenuine";
  }
  return "Unknown";
}

std::string_view to_string(Winner winner) {
  switch (winner) {
    case Winner::FlipFlopA: return "FlipFlopA";
    case Winner::FlipFlopB: return "FlipFlopB";
    case Winner::Connected: return "Connected";
  }
  return "Unknown";
}

std::string_view to_string(V4Solver solver) {
  switch (solver) {
    case V4Solver::Chain: return "chain";
    case V4Solver::Iterative: return "iterative";
    case V4Solver::Rubinstein: return "rubinstein";
    case V4Solver::Polynomial: return "polynomial";
    case V4Solver::BruteForce: return "bruteforce";
  }
  return "unknown";
}

double tree_length(const TetraConfig& c, const Vec3& s1, const Vec3& s2) {
  return distance(c.v1, s1) + distance(c.v2, s1) + distance(s1, s2) + distance(s2, c.v3) +
         distance(s2, c.v4);
}

double formal_tree_length(const TetraConfig& c, const Vec3& s1, const Vec3& s2) {
  return distance(c.v1, s1) + distance(c.v2, s1) - distance(s1, s2) + distance(s2, c.v3) +
         distance(s2, c.v4);
}

SteinerTree assemble_tree(const TetraConfig& c, const Vec3& w12, const Vec3& w34) {
  const double scale = length_scale(c);
  const double span = distance(w12, w34);
  SteinerTree t;
  t.length = span;
  if (!(span > 1e-14 * scale)) {
    t.s1 = t.s2 = w12;
    t.kind = TreeKind::NonGenuine;
    return t;
  }
  const Vec3 u = (w34 - w12) / span;

  // Circumcenter of an equilateral triangle is its centroid.
  const Vec3 c12 = (c.v1 + c.v2 + w12) / 3.0;
  const Vec3 c34 = (c.v3 + c.v4 + w34) / 3.0;
  const double t1 = 2.0 * dot(c12 - w12, u);
  const double t2 = 2.0 * dot(c34 - w34, -u);
  t.s1 = w12 + u * t1;
  t.s2 = w34 - u * t2;

  // Each junction must sit on the arc across the chord from its Melzak point,
  // strictly away from the terminals.
  const Vec3 h12 = midpoint(c.v1, c.v2);
  const Vec3 h34 = midpoint(c.v3, c.v4);
  const double edge_tol = 1e-9 * scale;
  const bool arc12 = dot(t.s1 - h12, w12 - h12) < 0.0 && distance(t.s1, c.v1) > edge_tol &&
                     distance(t.s1, c.v2) > edge_tol;
  const bool arc34 = dot(t.s2 - h34, w34 - h34) < 0.0 && distance(t.s2, c.v3) > edge_tol &&
                     distance(t.s2, c.v4) > edge_tol;
  if (!arc12 || !arc34) {
    t.kind = TreeKind::NonGenuine;
    return t;
  }

  const double gap = (span - t2) - t1;  // signed s1 -> s2 distance along u
  if (std::abs(gap) <= edge_tol) {
    t.s1 = t.s2 = midpoint(t.s1, t.s2);
    t.length = tree_length(c, t.s1, t.s2);
    t.kind = TreeKind::SingleJunction;
    return t;
  }
  // The edges must add up to |w12 w34|; near a crossing of the two axes the
  // direction of w12 w34 is unreliable and this is what catches it.
  const bool positive = gap > 0.0;
  const double edges = positive ? tree_length(c, t.s1, t.s2) : formal_tree_length(c, t.s1, t.s2);
  if (std::abs(edges - span) > kConsistencyTolerance * scale) {
    t.kind = TreeKind::NonGenuine;
    return t;
  }
  t.length = edges;
  t.kind = positive ? TreeKind::Genuine : TreeKind::FormalNegativeEdge;
  return t;
}

std::pair<double, double> flip_flop(const TetraConfig& c) {
  return {distance(c.v1, c.v3) + distance(c.v2, c.v4), distance(c.v1, c.v4) + distance(c.v2, c.v3)};
}

SteinerTree v4_planar(const TetraConfig& c) {
  require_segments(c);
  const double scale = length_scale(c);
  const auto pts = c.points();
  const Vec3 origin = (c.v1 + c.v2 + c.v3 + c.v4) * 0.25;

  // Plane normal from the best-conditioned triple; collinear sets take any
  // normal orthogonal to their line.
  Vec3 normal;
  double best = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        const Vec3 n = cross(pts[j] - pts[i], pts[k] - pts[i]);
        if (norm(n) > best) {
          best = norm(n);
          normal = n;
        }
      }
  const Vec3 along = normalized(c.v2 - c.v1);
  if (best <= 1e-18 * scale * scale) {
    const Vec3 trial = std::abs(along.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    normal = cross(along, trial);
  }
  normal = normalized(normal);
  for (const Vec3& p : pts)
    if (std::abs(dot(p - origin, normal)) > 1e-9 * scale)
      throw SolverError(SolverErrc::NotCoplanar, "v4_planar: points are not coplanar");

  const Vec3 e1 = normalized(cross(normal, cross(along, normal)));
  const Vec3 e2 = cross(normal, e1);
  auto affix = [&](const Vec3& p) {
    return std::complex<double>(dot(p - origin, e1), dot(p - origin, e2));
  };
  auto embed = [&](std::complex<double> z) { return origin + e1 * z.real() + e2 * z.imag(); };

  const std::complex<double> j = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const std::complex<double> j2 = j * j;
  const auto z1 = affix(c.v1), z2 = affix(c.v2), z3 = affix(c.v3), z4 = affix(c.v4);
  const std::array<std::complex<double>, 2> w12{-j2 * z1 - j * z2, -j * z1 - j2 * z2};
  const std::array<std::complex<double>, 2> w34{-j2 * z3 - j * z4, -j * z3 - j2 * z4};

  // Farthest pair between the two toroidal domains.
  std::complex<double> a = w12[0], b = w34[0];
  for (const auto& p : w12)
    for (const auto& q : w34)
      if (std::abs(p - q) > std::abs(a - b)) {
        a = p;
        b = q;
      }
  return assemble_tree(c, embed(a), embed(b));
}

SteinerTree v4_spatial_iterative(const TetraConfig& c) {
  require_segments(c);
  const Vec3 h = midpoint(c.v1, c.v2);
  const Vec3 k = midpoint(c.v3, c.v4);
  const Vec3 half12 = c.v2 - h;
  const Vec3 half34 = c.v4 - k;
  const double a = norm(half12);  // r12 / sqrt3
  const double b = norm(half34);
  const Vec3 d12 = half12 / a;
  const Vec3 d34 = half34 / b;

  auto cosine = [](const Vec3& dir, const Vec3& from, const Vec3& to) {
    const Vec3 e = to - from;
    const double n = norm(e);
    return n > 0.0 ? dot(dir, e) / n : 0.0;
  };
  // Each equation x = sqrt(3 + x^2) cos(v1v2, pq) is solved in its own
  // variable with the other held fixed.
  auto sweep = [&](const detail::Point2& z) -> detail::Point2 {
    const Vec3 q = k + half34 * z[1];
    const double x = solve_increasing([&](double t) {
      return t / std::sqrt(3.0 + t * t) - cosine(d12, h + half12 * t, q);
    });
    const Vec3 p = h + half12 * x;
    const double y = solve_increasing([&](double t) {
      return t / std::sqrt(3.0 + t * t) - cosine(d34, k + half34 * t, p);
    });
    return {x, y};
  };
  auto objective = [&](const detail::Point2& z) {
    return distance(h + half12 * z[0], k + half34 * z[1]) + a * std::sqrt(3.0 + z[0] * z[0]) +
           b * std::sqrt(3.0 + z[1] * z[1]);
  };

  const auto fp = detail::accelerated_fixed_point(sweep, objective, {0.0, 0.0}, kSweepTolerance,
                                                  kMaxSweeps);
  if (!fp.converged)
    throw SolverError(SolverErrc::NoConvergence, "v4_spatial_iterative: no convergence");
  const auto [x, y] = fp.z;
  return tree_through_axes(c, h + half12 * x, k + half34 * y, a * std::sqrt(3.0 + x * x),
                           b * std::sqrt(3.0 + y * y));
}

SteinerTree v4_spatial_rubinstein(const TetraConfig& c) {
  require_segments(c);
  const double scale = length_scale(c);
  const Vec3 da = normalized(c.v2 - c.v1);
  const Vec3 db = normalized(c.v4 - c.v3);
  const double cos_phi = dot(da, db);
  const double sin_phi = norm(cross(da, db));
  if (sin_phi < 1e-9)
    throw SolverError(SolverErrc::ParallelLines, "v4_spatial_rubinstein: parallel axes");

  // Feet u (on v1v2) and v (on v3v4) of the common perpendicular.
  const Vec3 w0 = c.v1 - c.v3;
  const double d = dot(da, w0);
  const double e = dot(db, w0);
  const double den = 1.0 - cos_phi * cos_phi;
  const Vec3 foot_u = c.v1 + da * ((cos_phi * e - d) / den);
  const Vec3 foot_v = c.v3 + db * ((e - cos_phi * d) / den);

  // Lengths in units of `scale`; abscissas are signed along da and db.
  const double gap = distance(foot_u, foot_v) / scale;
  const double m = dot(midpoint(c.v1, c.v2) - foot_u, da) / scale;
  const double n = dot(midpoint(c.v3, c.v4) - foot_v, db) / scale;
  const double r12 = kSqrt3 / 2.0 * distance(c.v1, c.v2) / scale;
  const double r34 = kSqrt3 / 2.0 * distance(c.v3, c.v4) / scale;
  const double sin2 = sin_phi * sin_phi;

  auto sweep = [&](const detail::Point2& z) -> detail::Point2 {
    const double dq = std::sqrt(gap * gap + z[1] * z[1] * sin2);
    const double xp = (m * dq + r12 * z[1] * cos_phi) / (r12 + dq);
    const double dp = std::sqrt(gap * gap + xp * xp * sin2);
    const double xq = (n * dp + r34 * xp * cos_phi) / (r34 + dp);
    return {xp, xq};
  };
  auto point_p = [&](double xp) { return foot_u + da * (xp * scale); };
  auto point_q = [&](double xq) { return foot_v + db * (xq * scale); };
  auto objective = [&](const detail::Point2& z) {
    return distance(point_p(z[0]), point_q(z[1])) / scale + std::hypot(r12, z[0] - m) +
           std::hypot(r34, z[1] - n);
  };

  const auto fp =
      detail::accelerated_fixed_point(sweep, objective, {m, n}, kSweepTolerance, kMaxSweeps);
  if (!fp.converged)
    throw SolverError(SolverErrc::NoConvergence, "v4_spatial_rubinstein: no convergence");
  const auto [xp, xq] = fp.z;
  return tree_through_axes(c, point_p(xp), point_q(xq), std::hypot(r12, xp - m) * scale,
                           std::hypot(r34, xq - n) * scale);
}

SteinerTree v4_spatial_polynomial(const TetraConfig& c) {
  require_segments(c);
  const auto points = circle_stationary_points(melzak_circle(c.v1, c.v2), melzak_circle(c.v3, c.v4));
  const auto farthest = std::max_element(
      points.begin(), points.end(),
      [](const auto& l, const auto& r) { return l.distance < r.distance; });
  return assemble_tree(c, farthest->p, farthest->q);
}

PotentialBreakdown u_potential(const TetraConfig& c, V4Solver solver) {
  require_finite(c);
  PotentialBreakdown r;
  std::tie(r.ff13_24, r.ff14_23) = flip_flop(c);

  auto run = [&](V4Solver s) {
    switch (s) {
      case V4Solver::Iterative: return v4_spatial_iterative(c);
      case V4Solver::Rubinstein: return v4_spatial_rubinstein(c);
      case V4Solver::Polynomial: return v4_spatial_polynomial(c);
      default: return v4_bruteforce(c);
    }
  };

  r.solver = V4Solver::BruteForce;
  if (solver == V4Solver::Chain) {
    for (V4Solver s : {V4Solver::Iterative, V4Solver::Rubinstein, V4Solver::Polynomial}) {
      try {
        r.tree = run(s);
        r.solver = s;
        break;
      } catch (const SolverError& e) {
        if (e.code() == SolverErrc::DegenerateSegment) break;
      }
    }
  } else if (solver != V4Solver::BruteForce) {
    r.tree = run(solver);
    r.solver = solver;
  }
  if (r.solver == V4Solver::BruteForce || r.tree.kind != TreeKind::Genuine) {
    r.tree = v4_bruteforce(c);
    r.solver = V4Solver::BruteForce;
  }
  r.v4 = r.tree.length;

  r.u = r.ff13_24;
  r.winner = Winner::FlipFlopA;
  if (r.ff14_23 < r.u) {
    r.u = r.ff14_23;
    r.winner = Winner::FlipFlopB;
  }
  if (r.v4 < r.u) {
    r.u = r.v4;
    r.winner = Winner::Connected;
  }
  return r;
}

}  // namespace fluxtube
