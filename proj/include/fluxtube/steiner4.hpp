#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "fluxtube/geometry.hpp"
#include "fluxtube/melzak.hpp"

namespace fluxtube {

enum class SolverErrc {
  NoConvergence,
  DegenerateSegment,
  ParallelLines,
  RootFindingFailure,
  NotCoplanar,
};

std::string_view to_string(SolverErrc code);

class SolverError : public std::runtime_error {
 public:
  SolverError(SolverErrc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  SolverErrc code() const noexcept { return code_; }

 private:
  SolverErrc code_;
};

// Genuine: two distinct junctions, 120 degrees everywhere, positively ordered.
// SingleJunction: s1 == s2, four-leg star.
// FormalNegativeEdge: junctions swapped along the Melzak line; length is the
//   signed total |v1s1| + |v2s1| - |s1s2| + |v3s2| + |v4s2|.
// NonGenuine: a junction falls outside its 120-degree arc (it would sit on or
//   beyond a terminal); length is the formal Melzak distance, not V4.
enum class TreeKind { Genuine, SingleJunction, FormalNegativeEdge, NonGenuine };

std::string_view to_string(TreeKind kind);

struct SteinerTree {
  Vec3 s1;
  Vec3 s2;
  double length = 0.0;
  TreeKind kind = TreeKind::NonGenuine;
};

// |v1s1| + |v2s1| + |s1s2| + |s2v3| + |s2v4|
double tree_length(const TetraConfig& config, const Vec3& s1, const Vec3& s2);

// Same with the junction edge counted negatively.
double formal_tree_length(const TetraConfig& config, const Vec3& s1, const Vec3& s2);

// Recovers junctions from the two Melzak points: s1 and s2 are the second
// intersections of line w12-w34 with the circumcircles of v1v2w12 and v3v4w34.
// The kind reflects arc membership and junction order along the line.
SteinerTree assemble_tree(const TetraConfig& config, const Vec3& w12, const Vec3& w34);

// (d13 + d24, d14 + d23)
std::pair<double, double> flip_flop(const TetraConfig& config);

// Planar construction with complex affixes. Throws SolverError(NotCoplanar)
// when the points are not coplanar to 1e-9 of the diameter and
// SolverError(DegenerateSegment) when v1 == v2 or v3 == v4.
SteinerTree v4_planar(const TetraConfig& config);

// Minimizes |pq| + (r12/sqrt3) sqrt(3 + x^2) + (r34/sqrt3) sqrt(3 + y^2) over the
// axis abscissas p = h + x (v2 - h), q = k + y (v4 - k). Throws
// SolverError(NoConvergence) after 500 sweeps and
// SolverError(DegenerateSegment) for coincident pair members.
SteinerTree v4_spatial_iterative(const TetraConfig& config);

// Coupled abscissa equations in the common-perpendicular frame of lines v1v2
// and v3v4. Throws SolverError(ParallelLines) when the frame is undefined.
SteinerTree v4_spatial_rubinstein(const TetraConfig& config);

// Farthest stationary pair of the two Melzak circles via the degree-8 resultant.
SteinerTree v4_spatial_polynomial(const TetraConfig& config);

// Multi-start Newton descent of the smoothed five-edge length over (s1, s2),
// with the smoothing driven to zero. Ground truth for the other solvers.
SteinerTree v4_bruteforce(const TetraConfig& config);

enum class Winner { FlipFlopA, FlipFlopB, Connected };
enum class V4Solver { Chain, Iterative, Rubinstein, Polynomial, BruteForce };

std::string_view to_string(Winner winner);
std::string_view to_string(V4Solver solver);

struct PotentialBreakdown {
  double ff13_24 = 0.0;
  double ff14_23 = 0.0;
  double v4 = 0.0;
  double u = 0.0;
  Winner winner = Winner::FlipFlopA;
  SteinerTree tree;                         // the connected tree behind v4
  V4Solver solver = V4Solver::BruteForce;  // which solver produced v4
};

// U = min(d13 + d24, d14 + d23, V4). With V4Solver::Chain the connected term
// comes from iterative -> rubinstein -> polynomial -> brute force; any
// non-genuine tree sends the evaluation to brute force. A single named solver
// propagates its SolverError.
PotentialBreakdown u_potential(const TetraConfig& config, V4Solver solver = V4Solver::Chain);

}  // namespace fluxtube
