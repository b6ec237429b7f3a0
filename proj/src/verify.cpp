#include "fluxtube/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "fluxtube/parallel.hpp"
#include "fluxtube/steiner4.hpp"

namespace fluxtube {
namespace {

std::mt19937_64 index_rng(std::uint64_t seed, long long index, std::uint32_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), salt};
  return std::mt19937_64(seq);
}

Vec3 random_point(std::mt19937_64& rng, double amplitude) {
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  const double x = u(rng), y = u(rng), z = u(rng);
  return {x, y, z};
}

TetraConfig jittered(TetraConfig c, std::mt19937_64& rng, double amplitude) {
  if (amplitude <= 0.0) return c;
  for (Vec3* p : {&c.v1, &c.v2, &c.v3, &c.v4}) *p += random_point(rng, amplitude);
  return c;
}

struct Margin {
  double value = 0.0;
  TetraConfig config;
};

template <class MarginFn>
InequalityReport sweep(long long n, std::uint64_t seed, MarginFn&& margin_of) {
  if (n < 1) throw std::invalid_argument("certification needs n >= 1");
  const auto total = static_cast<std::size_t>(2 * n);
  const auto margins = parallel_map<Margin>(total, [&](std::size_t i) {
    const auto idx = static_cast<long long>(i);
    const TetraConfig raw = idx < n ? sweep_config(idx, seed) : adversarial_config(idx - n, n, seed);
    const TetraConfig c = normalized_to_unit_diameter(raw);
    return Margin{margin_of(c), c};
  });

  InequalityReport r;
  r.samples = static_cast<long long>(total);
  r.seed = seed;
  r.worst_margin = margins.front().value;
  r.worst_config = margins.front().config;
  for (const auto& m : margins) {
    if (m.value < -kViolationTolerance) {
      ++r.violations;
      if (r.violating_configs.size() < kMaxRecordedViolations) r.violating_configs.push_back(m.config);
    }
    if (m.value < r.worst_margin) {
      r.worst_margin = m.value;
      r.worst_config = m.config;
    }
  }
  return r;
}

}  // namespace

void to_json(nlohmann::json& j, const InequalityReport& r) {
  j = nlohmann::json{{"samples", r.samples},
                     {"violations", r.violations},
                     {"worst_margin", r.worst_margin},
                     {"worst_config", r.worst_config},
                     {"seed", r.seed}};
}

double u_upper_bound(const TetraConfig& c) {
  const auto j = jacobi(c);
  return std::numbers::sqrt3 / 2.0 * (norm(j.x) + norm(j.y)) + norm(j.z);
}

double midpoint_tree_length(const TetraConfig& c) {
  const auto j = jacobi(c);
  return norm(j.x) + norm(j.y) + norm(j.z);
}

TetraConfig sweep_config(long long index, std::uint64_t seed) {
  auto rng = index_rng(seed, index, 0x52414e44u);
  return random_config(rng(), 1.0);
}

TetraConfig adversarial_config(long long index, long long count, std::uint64_t seed) {
  auto rng = index_rng(seed, index, 0x41445653u);
  const auto family = static_cast<AdversarialFamily>(index % kAdversarialFamilies);
  const long long k = index / kAdversarialFamilies;
  const long long per_family = std::max<long long>(1, (count + kAdversarialFamilies - 1) / kAdversarialFamilies);
  const double aspect = std::pow(10.0, 3.0 * static_cast<double>(k) / std::max<long long>(1, per_family - 1));
  static constexpr double kNoise[] = {0.0, 1e-6, 1e-3};
  const double noise = kNoise[k % 3];
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  TetraConfig c;
  switch (family) {
    case AdversarialFamily::ElongatedRectangle:
      c = {{0, 0, 0}, {aspect, 0, 0}, {0, 1, 0}, {aspect, 1, 0}};
      c = jittered(c, rng, noise);
      break;
    case AdversarialFamily::ShortSideRectangle:
      c = {{0, 0, 0}, {0, 1, 0}, {aspect, 0, 0}, {aspect, 1, 0}};
      c = jittered(c, rng, noise);
      break;
    case AdversarialFamily::NearDegenerate: {
      const Vec3 a = random_point(rng, 1.0), b = random_point(rng, 1.0);
      const double eps = std::pow(10.0, -8.0 + 5.0 * unit(rng));
      switch (k % 4) {
        case 0: c = {a, a, b, b}; break;  // x = y = 0
        case 1: c = {a, b, a, b}; break;  // quarks on antiquarks
        case 2: c = {a, a, a, a}; break;
        default: c = {a, a, b, random_point(rng, 1.0)}; break;
      }
      c = jittered(c, rng, eps);
      break;
    }
    case AdversarialFamily::Coplanar:
      c = random_config(rng(), 1.0);
      for (Vec3* p : {&c.v1, &c.v2, &c.v3, &c.v4}) p->z = 0.0;
      break;
    case AdversarialFamily::TwistedRectangle: {
      const double twist = std::numbers::pi * unit(rng);
      const Mat3 r = rotation_about({1, 0, 0}, twist);
      c = {{0, 0, 0}, {aspect, 0, 0}, {0, 1, 0}, r * Vec3{aspect, 1, 0}};
      c = jittered(c, rng, noise);
      break;
    }
  }
  const Vec3 shift = random_point(rng, 1.0);
  return translated(transformed(c, random_rotation(rng())), shift);
}

InequalityReport certify_u_bound(long long n, std::uint64_t seed) {
  return sweep(n, seed, [](const TetraConfig& c) { return u_upper_bound(c) - u_potential(c).u; });
}

InequalityReport certify_midpoint_bound(long long n, std::uint64_t seed) {
  return sweep(n, seed, [](const TetraConfig& c) {
    const auto p = u_potential(c);
    return std::min(midpoint_tree_length(c) - p.v4, p.v4 - p.u);
  });
}

TetraConfig find_v4_bound_violation(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    // |v1v2| = |v3v4| = length much larger than the quark-antiquark gap.
    const double length = 5.0 * std::pow(10.0, unit(rng));
    const double gap = 0.2 + 0.8 * unit(rng);
    TetraConfig c{{0, 0, 0}, {length, 0, 0}, {0, gap, 0}, {length, gap, 0}};
    c = translated(transformed(c, random_rotation(rng())), random_point(rng, 1.0));
    const double bound = u_upper_bound(c);
    const auto tree = v4_bruteforce(c);
    const auto p = u_potential(c);
    if (tree.length - bound > 0.1 && p.u <= bound) return c;
  }
  throw std::logic_error("find_v4_bound_violation: no elongated rectangle violates the bound");
}

}  // namespace fluxtube
