#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "fluxtube/steiner4.hpp"

namespace fluxtube {
namespace {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

constexpr int kSmoothingStages = 12;
constexpr int kNewtonIterations = 60;
constexpr int kRandomStarts = 2;
constexpr std::uint64_t kStartSeed = 0x5eed5eedULL;

Vec3 block(const Vec6& s, int b) { return {s[3 * b], s[3 * b + 1], s[3 * b + 2]}; }

Vec6 pack(const Vec3& s1, const Vec3& s2) {
  Vec6 s;
  s << s1.x, s1.y, s1.z, s2.x, s2.y, s2.z;
  return s;
}

// Five-edge length with every edge |e| replaced by sqrt(|e|^2 + eps^2); smooth,
// strictly convex, and above the true length by at most 5 eps.
class SmoothedTree {
 public:
  SmoothedTree(const TetraConfig& c, double eps) : c_(c), eps2_(eps * eps) {}

  double value(const Vec6& s) const {
    const Vec3 s1 = block(s, 0), s2 = block(s, 1);
    return edge(s1 - c_.v1) + edge(s1 - c_.v2) + edge(s1 - s2) + edge(s2 - c_.v3) +
           edge(s2 - c_.v4);
  }

  double derivatives(const Vec6& s, Vec6& g, Mat6& h) const {
    g.setZero();
    h.setZero();
    const Vec3 s1 = block(s, 0), s2 = block(s, 1);
    double total = 0.0;
    total += fixed_edge(s1 - c_.v1, 0, g, h);
    total += fixed_edge(s1 - c_.v2, 0, g, h);
    total += fixed_edge(s2 - c_.v3, 1, g, h);
    total += fixed_edge(s2 - c_.v4, 1, g, h);

    const Vec3 e = s1 - s2;
    const double rho = std::sqrt(norm2(e) + eps2_);
    const Eigen::Vector3d ev(e.x, e.y, e.z);
    const Eigen::Matrix3d k = (Eigen::Matrix3d::Identity() - ev * ev.transpose() / (rho * rho)) / rho;
    g.segment<3>(0) += ev / rho;
    g.segment<3>(3) -= ev / rho;
    h.block<3, 3>(0, 0) += k;
    h.block<3, 3>(3, 3) += k;
    h.block<3, 3>(0, 3) -= k;
    h.block<3, 3>(3, 0) -= k;
    return total + rho;
  }

 private:
  double edge(const Vec3& e) const { return std::sqrt(norm2(e) + eps2_); }

  double fixed_edge(const Vec3& e, int b, Vec6& g, Mat6& h) const {
    const double rho = edge(e);
    const Eigen::Vector3d ev(e.x, e.y, e.z);
    g.segment<3>(3 * b) += ev / rho;
    h.block<3, 3>(3 * b, 3 * b) +=
        (Eigen::Matrix3d::Identity() - ev * ev.transpose() / (rho * rho)) / rho;
    return rho;
  }

  const TetraConfig& c_;
  double eps2_;
};

// Damped Newton with backtracking on one smoothing level.
void newton(const SmoothedTree& f, Vec6& s, double scale) {
  Vec6 g;
  Mat6 h;
  for (int it = 0; it < kNewtonIterations; ++it) {
    const double f0 = f.derivatives(s, g, h);
    const double gnorm = g.norm();
    Vec6 step;
    Eigen::LDLT<Mat6> ldlt(h);
    step = ldlt.solve(-g);
    if (ldlt.info() != Eigen::Success || !step.allFinite() || step.dot(g) >= 0.0) {
      // Hessian can be singular when all edges are collinear.
      const Mat6 reg = h + Mat6::Identity() * (1e-12 + gnorm / scale);
      step = reg.ldlt().solve(-g);
      if (!step.allFinite() || step.dot(g) >= 0.0) step = -g * scale;
    }
    const double slope = step.dot(g);
    if (-slope < 1e-30 * scale) return;
    double t = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 60; ++ls) {
      const Vec6 trial = s + t * step;
      if (f.value(trial) <= f0 + 1e-4 * t * slope) {
        s = trial;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved || (t * step).norm() < 1e-15 * scale) return;
  }
}

}  // namespace

SteinerTree v4_bruteforce(const TetraConfig& c) {
  require_finite(c);
  const double dia = diameter(c);
  SteinerTree best;
  if (!(dia > 0.0)) {
    best.s1 = best.s2 = c.v1;
    best.length = 0.0;
    best.kind = TreeKind::SingleJunction;
    return best;
  }

  const Vec3 h = midpoint(c.v1, c.v2);
  const Vec3 k = midpoint(c.v3, c.v4);
  const Vec3 centroid = (c.v1 + c.v2 + c.v3 + c.v4) * 0.25;
  std::vector<Vec6> starts{pack(h, k), pack(centroid, centroid), pack(h, h), pack(k, k)};
  for (const auto& [a, b] : {std::pair{c.v1, c.v3}, std::pair{c.v1, c.v4}, std::pair{c.v2, c.v3},
                             std::pair{c.v2, c.v4}}) {
    const Vec3 m = midpoint(a, b);
    starts.push_back(pack(m, m));
  }
  std::mt19937_64 rng(kStartSeed);
  std::normal_distribution<double> jitter(0.0, 0.25 * dia);
  for (int i = 0; i < kRandomStarts; ++i) {
    Vec6 s = starts.front();
    for (int d = 0; d < 6; ++d) s[d] += jitter(rng);
    starts.push_back(s);
  }

  best.length = std::numeric_limits<double>::infinity();
  for (Vec6 s : starts) {
    double eps = 0.1 * dia;
    for (int stage = 0; stage < kSmoothingStages; ++stage, eps *= 0.1)
      newton(SmoothedTree(c, eps), s, dia);

    // The true minimizer may put a junction exactly on a terminal or on the
    // other junction; try those snaps.
    Vec3 s1 = block(s, 0), s2 = block(s, 1);
    double len = tree_length(c, s1, s2);
    const std::array<Vec3, 4> snap1{s1, c.v1, c.v2, s2};
    const std::array<Vec3, 4> snap2{s2, c.v3, c.v4, s1};
    for (const Vec3& a : snap1)
      for (const Vec3& b : snap2) {
        const double l = tree_length(c, a, b);
        if (l < len) {
          len = l;
          s1 = a;
          s2 = b;
        }
      }
    if (len < best.length) {
      best.length = len;
      best.s1 = s1;
      best.s2 = s2;
    }
  }

  const double tol = 1e-7 * dia;
  if (distance(best.s1, best.s2) <= tol) {
    best.kind = TreeKind::SingleJunction;
  } else if (std::min({distance(best.s1, c.v1), distance(best.s1, c.v2), distance(best.s2, c.v3),
                       distance(best.s2, c.v4)}) <= tol) {
    best.kind = TreeKind::NonGenuine;
  } else {
    best.kind = TreeKind::Genuine;
  }
  return best;
}

}  // namespace fluxtube
