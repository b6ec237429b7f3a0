#pragma once

#include <ostream>
#include <vector>

namespace fluxtube {

// Quark mass M and antiquark mass m; energies scale with m^(-1/3) at fixed
// ratio, so m = 1 loses no generality.
struct MassParams {
  double ratio = 1.0;       // M / m
  double light_mass = 1.0;  // m

  double heavy_mass() const { return ratio * light_mass; }
  double reduced_mass() const;  // mu = mM / (m + M)
};

// Throws std::invalid_argument unless ratio > 0 and light_mass > 0.
MassParams make_mass_params(double ratio, double light_mass = 1.0);

struct ShootingOptions {
  double outer_radius = 15.0;
  double step = 1e-3;
  double energy_tolerance = 1e-10;
};

// Lowest eigenvalue of -alpha u'' + (beta r + shift) u = e u on r > 0 with
// u(0) = u(outer_radius) = 0, by Numerov shooting and bisection on e.
double linear_ground_state(double alpha, double beta, double shift = 0.0,
                           const ShootingOptions& options = {});

// Ground state of -Delta + |r| in three dimensions (minus the first Airy zero).
double airy_e0(const ShootingOptions& options = {});

// Upper bound from the midpoint tree: e0 [M^-1/3 + m^-1/3 + (4 mu)^-1/3].
double bound_e_prime(const MassParams& masses, double e0);
double bound_e_prime(double ratio);

// Improved bound: e0 [(3/4)^1/3 (M^-1/3 + m^-1/3) + (4 mu)^-1/3].
double bound_e_double_prime(const MassParams& masses, double e0);
double bound_e_double_prime(double ratio);

// Two-meson threshold: 2 e0 (2 mu)^-1/3.
double threshold(const MassParams& masses, double e0);
double threshold(double ratio);

struct Crossover {
  double mass_ratio = 0.0;
  double e_double_prime = 0.0;
  double e_threshold = 0.0;
};

// Mass ratio where the improved bound meets the threshold, by bisection on
// log M over [1e2, 1e6] to 1e-8 relative. Throws std::logic_error if the
// bracket holds no sign change.
Crossover crossover(double light_mass = 1.0);
double crossover_mass();

struct BoundCurvePoint {
  double mass_ratio = 0.0;
  double e_prime = 0.0;  // all three in units of e0
  double e_double_prime = 0.0;
  double e_threshold = 0.0;
};

// Log-spaced samples of the three energies. Throws std::invalid_argument
// unless 0 < m_min < m_max and n_points >= 2.
std::vector<BoundCurvePoint> bound_curve(double m_min, double m_max, int n_points);

// Header M,E_prime_over_e0,E_dprime_over_e0,E_th_over_e0 then one row per point.
void write_curve_csv(std::ostream& out, const std::vector<BoundCurvePoint>& curve);

}  // namespace fluxtube
