#include "fluxtube/melzak.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fluxtube/steiner4.hpp"

namespace fluxtube {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGridNodes = 256;
constexpr double kBisectionWidth = 1e-13;

template <std::size_t N>
using Poly = std::array<double, N>;  // ascending powers of u

template <std::size_t N, std::size_t M>
Poly<N + M - 1> multiply(const Poly<N>& a, const Poly<M>& b) {
  Poly<N + M - 1> r{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < M; ++j) r[i + j] += a[i] * b[j];
  return r;
}

template <std::size_t N>
Poly<N> subtract(Poly<N> a, const Poly<N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] -= b[i];
  return a;
}

// kc cos(phi) + ks sin(phi) + k0, multiplied by 1 + u^2 with u = tan(phi/2).
Poly<3> trig_to_quadratic(double kc, double ks, double k0) {
  return {k0 + kc, 2.0 * ks, k0 - kc};
}

// Coefficients of one equation for both circles: index 0 is the theta
// equation, index 1 the phi equation.
struct QuadraticPair {
  std::array<Poly<3>, 2> v;
};

Poly<5> wronskian(const QuadraticPair& x, const QuadraticPair& y) {
  return subtract(multiply(x.v[0], y.v[1]), multiply(x.v[1], y.v[0]));
}

// Homogeneous form sum c_k sin^k(phi/2) cos^(8-k)(phi/2): a bounded periodic
// function sharing the sign and zeros of the polynomial on the whole circle,
// including phi = pi where u is infinite.
double compactified(const Poly<9>& p, double phi) {
  const double s = std::sin(0.5 * phi);
  const double c = std::cos(0.5 * phi);
  double acc = 0.0;
  double sp = 1.0;
  std::array<double, 9> cpow{};
  cpow[0] = 1.0;
  for (int k = 1; k < 9; ++k) cpow[k] = cpow[k - 1] * c;
  for (int k = 0; k < 9; ++k) {
    acc += p[k] * sp * cpow[8 - k];
    sp *= s;
  }
  return acc;
}

double bisect(const Poly<9>& p, double lo, double hi, double flo) {
  while (hi - lo > kBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    const double fm = compactified(p, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Minimizes sign * f on [lo, hi] by golden section.
double golden_min(const Poly<9>& p, double lo, double hi, double sign) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = sign * compactified(p, x1), f2 = sign * compactified(p, x2);
  while (b - a > kBisectionWidth) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = sign * compactified(p, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = sign * compactified(p, x2);
    }
  }
  return 0.5 * (a + b);
}

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a;
}

// Real zeros of the compactified resultant over one period.
std::vector<double> isolate_roots(const Poly<9>& p) {
  std::vector<double> nodes(kGridNodes);
  for (int k = 0; k < kGridNodes; ++k)
    nodes[k] = kPi * std::cos(kPi * (kGridNodes - 1 - k + 0.5) / kGridNodes);
  nodes.push_back(nodes.front() + 2.0 * kPi);  // closes the period across phi = pi

  std::vector<double> values(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) values[k] = compactified(p, nodes[k]);

  std::vector<double> roots;
  int sign_changes = 0;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const double fa = values[k], fb = values[k + 1];
    if (fa == 0.0) {
      roots.push_back(nodes[k]);
      continue;
    }
    if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      ++sign_changes;
      roots.push_back(bisect(p, nodes[k], nodes[k + 1], fa));
    }
  }
  if (sign_changes % 2 != 0)
    throw SolverError(SolverErrc::RootFindingFailure, "odd number of sign changes on the circle");

  // Root pairs hiding between two nodes of equal sign show up as a local dip
  // of |f| toward zero.
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  for (std::size_t k = 1; k + 1 < nodes.size(); ++k) {
    const double f = values[k];
    if (f == 0.0 || (values[k - 1] < 0.0) != (f < 0.0) || (values[k + 1] < 0.0) != (f < 0.0))
      continue;
    if (!(std::abs(f) < std::abs(values[k - 1]) && std::abs(f) < std::abs(values[k + 1]))) continue;
    const double sign = f > 0.0 ? 1.0 : -1.0;
    const double xm = golden_min(p, nodes[k - 1], nodes[k + 1], sign);
    const double fm = compactified(p, xm);
    if ((fm < 0.0) != (f < 0.0)) {
      roots.push_back(bisect(p, nodes[k - 1], xm, values[k - 1]));
      roots.push_back(bisect(p, xm, nodes[k + 1], fm));
    } else if (std::abs(fm) <= 1e-13 * peak) {
      roots.push_back(xm);
    }
  }
  for (double& r : roots) r = wrap_angle(r);
  return roots;
}

struct Frame {
  const MelzakCircle& c1;
  const MelzakCircle& c2;

  Vec3 p(double t) const { return c1.point(t); }
  Vec3 q(double f) const { return c2.point(f); }

  // Gradient of |P - Q|^2 / 2 in (theta, phi).
  std::array<double, 2> gradient(double t, double f) const {
    const Vec3 d = p(t) - q(f);
    return {dot(d, c1.tangent(t)), -dot(d, c2.tangent(f))};
  }

  // Newton polish of a stationary pair on the torus.
  void polish(double& t, double& f) const {
    for (int it = 0; it < 8; ++it) {
      const Vec3 d = p(t) - q(f);
      const Vec3 pt = c1.tangent(t), qt = c2.tangent(f);
      const double gt = dot(d, pt), gf = -dot(d, qt);
      const double htt = dot(pt, pt) - dot(d, p(t) - c1.center);
      const double hff = dot(qt, qt) + dot(d, q(f) - c2.center);
      const double htf = -dot(pt, qt);
      const double det = htt * hff - htf * htf;
      if (!(std::abs(det) > 0.0)) return;
      const double dt = (hff * gt - htf * gf) / det;
      const double df = (htt * gf - htf * gt) / det;
      if (!std::isfinite(dt) || !std::isfinite(df) || std::abs(dt) > 1e-3 || std::abs(df) > 1e-3)
        return;
      t -= dt;
      f -= df;
      if (std::abs(dt) < 1e-16 && std::abs(df) < 1e-16) return;
    }
  }
};

std::vector<CircleStationaryPoint> coaxial_points(const MelzakCircle& c1, const MelzakCircle& c2) {
  // Rotational symmetry about the shared axis; pick the representatives
  // aligned with c1.e1.
  const double phi_near = std::atan2(dot(c1.e1, c2.e2), dot(c1.e1, c2.e1));
  std::vector<CircleStationaryPoint> out;
  for (double phi : {phi_near, wrap_angle(phi_near + kPi)}) {
    CircleStationaryPoint s;
    s.theta = 0.0;
    s.phi = phi;
    s.p = c1.point(0.0);
    s.q = c2.point(phi);
    s.distance = distance(s.p, s.q);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.distance < b.distance; });
  return out;
}

}  // namespace

Vec3 MelzakCircle::point(double theta) const {
  return center + (e1 * std::cos(theta) + e2 * std::sin(theta)) * radius;
}

Vec3 MelzakCircle::tangent(double theta) const {
  return (e2 * std::cos(theta) - e1 * std::sin(theta)) * radius;
}

MelzakCircle melzak_circle(const Vec3& a, const Vec3& b) {
  const double len = distance(a, b);
  if (!(len > 0.0)) throw SolverError(SolverErrc::DegenerateSegment, "melzak_circle: coincident endpoints");
  MelzakCircle c;
  c.center = midpoint(a, b);
  c.axis = (b - a) / len;
  c.radius = std::numbers::sqrt3 / 2.0 * len;
  const Vec3 trial = std::abs(c.axis.x) < 0.6 ? Vec3{1, 0, 0}
                     : std::abs(c.axis.y) < 0.6 ? Vec3{0, 1, 0}
                                                 : Vec3{0, 0, 1};
  c.e1 = normalized(cross(c.axis, trial));
  c.e2 = cross(c.axis, c.e1);
  return c;
}

std::array<double, 9> stationary_resultant(const MelzakCircle& c1, const MelzakCircle& c2) {
  const Vec3 d = c1.center - c2.center;
  const double r1 = c1.radius, r2 = c2.radius;
  const Vec3 &e1 = c1.e1, &f1 = c1.e2, &e2 = c2.e1, &f2 = c2.e2;

  // theta equation: alpha1 cos(theta) + beta1 sin(theta) = 0 with
  // alpha1 = (c1 - Q).f1, beta1 = -(c1 - Q).e1.
  // phi equation: alpha2 cos(theta) + beta2 sin(theta) + gamma2 = 0 with
  // T = -sin(phi) e2 + cos(phi) f2, alpha2 = r1 e1.T, beta2 = r1 f1.T, gamma2 = d.T.
  QuadraticPair alpha, beta, gamma;
  alpha.v[0] = trig_to_quadratic(-r2 * dot(e2, f1), -r2 * dot(f2, f1), dot(d, f1));
  beta.v[0] = trig_to_quadratic(r2 * dot(e2, e1), r2 * dot(f2, e1), -dot(d, e1));
  gamma.v[0] = {0.0, 0.0, 0.0};
  alpha.v[1] = trig_to_quadratic(r1 * dot(e1, f2), -r1 * dot(e1, e2), 0.0);
  beta.v[1] = trig_to_quadratic(r1 * dot(f1, f2), -r1 * dot(f1, e2), 0.0);
  gamma.v[1] = trig_to_quadratic(dot(d, f2), -dot(d, e2), 0.0);

  // With t = tan(theta/2): (gamma - alpha) t^2 + 2 beta t + (alpha + gamma) = 0.
  QuadraticPair delta, eta, eps;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 3; ++k) {
      delta.v[i][k] = gamma.v[i][k] - alpha.v[i][k];
      eta.v[i][k] = 2.0 * beta.v[i][k];
      eps.v[i][k] = alpha.v[i][k] + gamma.v[i][k];
    }
  }
  const Poly<5> de = wronskian(delta, eps);
  return subtract(multiply(wronskian(delta, eta), wronskian(eta, eps)), multiply(de, de));
}

std::vector<CircleStationaryPoint> circle_stationary_points(const MelzakCircle& c1,
                                                            const MelzakCircle& c2) {
  const double scale = c1.radius + c2.radius + distance(c1.center, c2.center);
  const bool parallel = norm(cross(c1.axis, c2.axis)) < 1e-12;
  if (parallel && norm(cross(c2.center - c1.center, c1.axis)) < 1e-12 * scale)
    return coaxial_points(c1, c2);

  // Work on circles rescaled to unit size so the tolerances are absolute.
  MelzakCircle u1 = c1, u2 = c2;
  u1.center = Vec3{};
  u1.radius = c1.radius / scale;
  u2.center = (c2.center - c1.center) / scale;
  u2.radius = c2.radius / scale;

  const auto poly = stationary_resultant(u1, u2);
  double peak = 0.0;
  for (double v : poly) peak = std::max(peak, std::abs(v));
  if (!(peak > 1e-14))
    throw SolverError(SolverErrc::RootFindingFailure, "resultant vanishes identically");
  Poly<9> normalized_poly = poly;
  for (double& v : normalized_poly) v /= peak;

  const Frame frame{u1, u2};
  std::vector<CircleStationaryPoint> found;
  auto add = [&](double theta, double phi) {
    frame.polish(theta, phi);
    const auto g = frame.gradient(theta, phi);
    if (std::hypot(g[0], g[1]) > 1e-8) return;
    theta = wrap_angle(theta);
    phi = wrap_angle(phi);
    for (const auto& s : found)
      if (std::abs(wrap_angle(s.theta - theta)) < 1e-7 && std::abs(wrap_angle(s.phi - phi)) < 1e-7)
        return;
    CircleStationaryPoint s;
    s.theta = theta;
    s.phi = phi;
    s.p = c1.point(theta);
    s.q = c2.point(phi);
    s.distance = distance(s.p, s.q);
    found.push_back(s);
  };

  for (double phi : isolate_roots(normalized_poly)) {
    const Vec3 q = u2.point(phi);
    const Vec3 tan_q = u2.tangent(phi);
    const double ae = dot(u1.center - q, u1.e1);
    const double af = dot(u1.center - q, u1.e2);
    std::vector<double> thetas;
    if (std::hypot(ae, af) > 1e-12) {
      // theta equation forces P - c1 parallel to the in-plane part of Q - c1.
      const double base = std::atan2(-af, -ae);
      thetas = {base, base + kPi};
    } else {
      // Q on the axis of c1: every theta solves the first equation, so solve
      // the second one, R cos(theta - psi) = -gamma.
      const double a2 = u1.radius * dot(u1.e1, tan_q);
      const double b2 = u1.radius * dot(u1.e2, tan_q);
      const double g2 = dot(u1.center - u2.center, tan_q);
      const double r = std::hypot(a2, b2);
      if (r > 0.0 && std::abs(g2) <= r) {
        const double psi = std::atan2(b2, a2);
        const double w = std::acos(std::clamp(-g2 / r, -1.0, 1.0));
        thetas = {psi + w, psi - w};
      }
    }
    for (double theta : thetas) {
      const auto g = frame.gradient(theta, phi);
      if (std::hypot(g[0], g[1]) < 1e-6) add(theta, phi);
    }
  }
  if (found.empty())
    throw SolverError(SolverErrc::RootFindingFailure, "no stationary pair recovered from the resultant");
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.distance < b.distance; });
  return found;
}

}  // namespace fluxtube
