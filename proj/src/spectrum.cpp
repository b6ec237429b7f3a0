#include "fluxtube/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fluxtube {
namespace {

// u(R) for trial energy e, started from u(0) = 0, u'(0) = 1.
double shoot(double alpha, double beta, double shift, double e, const ShootingOptions& o) {
  const int n = static_cast<int>(std::ceil(o.outer_radius / o.step));
  const double h = o.outer_radius / n;
  const double h2 = h * h / 12.0;
  auto k = [&](double r) { return (beta * r + shift - e) / alpha; };  // u'' = k u

  double r_prev = 0.0, u_prev = 0.0;
  double r = h, u = h;
  for (int i = 1; i < n; ++i) {
    const double r_next = r + h;
    const double u_next =
        (2.0 * u * (1.0 + 5.0 * h2 * k(r)) - u_prev * (1.0 - h2 * k(r_prev))) / (1.0 - h2 * k(r_next));
    r_prev = r;
    u_prev = u;
    r = r_next;
    u = u_next;
  }
  return u;
}

double cached_e0() {
  static const double e0 = airy_e0();
  return e0;
}

}  // namespace

double MassParams::reduced_mass() const {
  const double big = heavy_mass();
  return light_mass * big / (light_mass + big);
}

MassParams make_mass_params(double ratio, double light_mass) {
  if (!(ratio > 0.0) || !std::isfinite(ratio))
    throw std::invalid_argument("mass ratio must be positive and finite");
  if (!(light_mass > 0.0) || !std::isfinite(light_mass))
    throw std::invalid_argument("antiquark mass must be positive and finite");
  return {ratio, light_mass};
}

double linear_ground_state(double alpha, double beta, double shift, const ShootingOptions& o) {
  if (!(alpha > 0.0) || !(beta > 0.0)) throw std::invalid_argument("alpha and beta must be positive");
  // Scan upward from the potential floor until u(R) first changes sign.
  const double unit = std::cbrt(alpha * beta * beta);
  double lo = shift;
  double flo = shoot(alpha, beta, shift, lo, o);
  double hi = lo;
  double fhi = flo;
  for (int i = 0; i < 400; ++i) {
    hi = lo + 0.05 * unit;
    fhi = shoot(alpha, beta, shift, hi, o);
    if ((fhi < 0.0) != (flo < 0.0)) break;
    lo = hi;
    flo = fhi;
  }
  if ((fhi < 0.0) == (flo < 0.0)) throw std::runtime_error("no bound state found below scan limit");
  while (hi - lo > o.energy_tolerance) {
    const double mid = 0.5 * (lo + hi);
    const double fm = shoot(alpha, beta, shift, mid, o);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double airy_e0(const ShootingOptions& options) { return linear_ground_state(1.0, 1.0, 0.0, options); }

double bound_e_prime(const MassParams& m, double e0) {
  return e0 * (std::pow(m.heavy_mass(), -1.0 / 3.0) + std::pow(m.light_mass, -1.0 / 3.0) +
               std::pow(4.0 * m.reduced_mass(), -1.0 / 3.0));
}

double bound_e_double_prime(const MassParams& m, double e0) {
  return e0 * (std::cbrt(0.75) * (std::pow(m.heavy_mass(), -1.0 / 3.0) +
                                  std::pow(m.light_mass, -1.0 / 3.0)) +
               std::pow(4.0 * m.reduced_mass(), -1.0 / 3.0));
}

double threshold(const MassParams& m, double e0) {
  return 2.0 * e0 * std::pow(2.0 * m.reduced_mass(), -1.0 / 3.0);
}

double bound_e_prime(double ratio) { return bound_e_prime(make_mass_params(ratio), cached_e0()); }
double bound_e_double_prime(double ratio) { return bound_e_double_prime(make_mass_params(ratio), cached_e0()); }
double threshold(double ratio) { return threshold(make_mass_params(ratio), cached_e0()); }

Crossover crossover(double light_mass) {
  auto gap = [&](double log_m) {
    const auto p = make_mass_params(std::exp(log_m), light_mass);
    return bound_e_double_prime(p, cached_e0()) - threshold(p, cached_e0());
  };
  double lo = std::log(1e2), hi = std::log(1e6);
  double glo = gap(lo);
  if ((glo < 0.0) == (gap(hi) < 0.0))
    throw std::logic_error("crossover: no sign change of E'' - E_th on [1e2, 1e6]");
  // Width in log M equals the relative tolerance in M.
  while (hi - lo > 1e-8) {
    const double mid = 0.5 * (lo + hi);
    const double gm = gap(mid);
    if ((gm < 0.0) == (glo < 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  Crossover c;
  c.mass_ratio = std::exp(0.5 * (lo + hi));
  const auto p = make_mass_params(c.mass_ratio, light_mass);
  c.e_double_prime = bound_e_double_prime(p, cached_e0());
  c.e_threshold = threshold(p, cached_e0());
  return c;
}

double crossover_mass() { return crossover().mass_ratio; }

std::vector<BoundCurvePoint> bound_curve(double m_min, double m_max, int n_points) {
  if (!(m_min > 0.0) || !(m_max > m_min) || !std::isfinite(m_max))
    throw std::invalid_argument("bound_curve: need 0 < m_min < m_max");
  if (n_points < 2) throw std::invalid_argument("bound_curve: need at least two points");
  std::vector<BoundCurvePoint> out;
  out.reserve(n_points);
  const double a = std::log(m_min), b = std::log(m_max);
  for (int i = 0; i < n_points; ++i) {
    const double m = i == n_points - 1 ? m_max : i == 0 ? m_min : std::exp(a + (b - a) * i / (n_points - 1));
    const auto p = make_mass_params(m);
    out.push_back({m, bound_e_prime(p, 1.0), bound_e_double_prime(p, 1.0), threshold(p, 1.0)});
  }
  return out;
}

void write_curve_csv(std::ostream& out, const std::vector<BoundCurvePoint>& curve) {
  out << "M,E_prime_over_e0,E_dprime_over_e0,E_th_over_e0\n";
  char line[160];
  for (const auto& p : curve) {
    std::snprintf(line, sizeof line, "%.10g,%.12g,%.12g,%.12g\n", p.mass_ratio, p.e_prime,
                  p.e_double_prime, p.e_threshold);
    out << line;
  }
}

}  // namespace fluxtube
