#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "fluxtube/geometry.hpp"

namespace fluxtube {

// Margins below -kViolationTolerance on unit-diameter configurations count as violations.
inline constexpr double kViolationTolerance = 1e-9;
inline constexpr std::size_t kMaxRecordedViolations = 10000;

struct InequalityReport {
  long long samples = 0;
  long long violations = 0;
  double worst_margin = 0.0;  // min over samples of (bound - lhs)
  TetraConfig worst_config;
  std::uint64_t seed = 0;
  std::vector<TetraConfig> violating_configs;  // first kMaxRecordedViolations, normalized
};

void to_json(nlohmann::json& j, const InequalityReport& r);

// (sqrt3/2)(|x| + |y|) + |z|
double u_upper_bound(const TetraConfig& config);

// |x| + |y| + |z|: the tree with junctions at the pair midpoints.
double midpoint_tree_length(const TetraConfig& config);

enum class AdversarialFamily {
  ElongatedRectangle,  // quarks along the long sides, aspect 1..1e3
  ShortSideRectangle,  // quarks on one short side
  NearDegenerate,      // coincident pairs plus tiny noise
  Coplanar,            // random points in a plane
  TwistedRectangle,    // antiquark pair rotated about the rectangle's long axis
};

inline constexpr int kAdversarialFamilies = 5;

// Member `index` of the deterministic adversarial sequence of length `count`.
TetraConfig adversarial_config(long long index, long long count, std::uint64_t seed);

// The i-th random configuration of a sweep, uniform in [-1, 1]^3.
TetraConfig sweep_config(long long index, std::uint64_t seed);

// U <= (sqrt3/2)(|x| + |y|) + |z| on n random plus n adversarial
// configurations, each normalized to unit diameter. Throws
// std::invalid_argument for n < 1.
InequalityReport certify_u_bound(long long n, std::uint64_t seed);

// U <= V4 <= |x| + |y| + |z| on the same 2n configurations; the margin is the
// smaller of the two slacks.
InequalityReport certify_midpoint_bound(long long n, std::uint64_t seed);

// Elongated rectangle where the connected tree exceeds the U bound by more
// than 0.1 while U itself still satisfies it. Throws std::logic_error if the
// search comes up empty.
TetraConfig find_v4_bound_violation(std::uint64_t seed);

}  // namespace fluxtube
