#include <doctest.h>

#include <cmath>
#include <sstream>

#include "fluxtube/spectrum.hpp"

using namespace fluxtube;

TEST_CASE("reduced mass") {
  CHECK(make_mass_params(1.0).reduced_mass() == doctest::Approx(0.5));
  CHECK(make_mass_params(1e6).reduced_mass() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(make_mass_params(3.0, 2.0).reduced_mass() == doctest::Approx(1.5));
  CHECK_THROWS_AS(make_mass_params(0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_mass_params(-1.0), std::invalid_argument);
}

TEST_CASE("linear potential ground state") {
  const double e0 = airy_e0();
  CHECK(e0 > 2.3381);
  CHECK(e0 < 2.3382);
  CHECK(linear_ground_state(1.0, 1.0, 0.75) == doctest::Approx(e0 + 0.75).epsilon(1e-9));
  CHECK(linear_ground_state(2.0, 3.0) ==
        doctest::Approx(std::cbrt(2.0) * std::pow(3.0, 2.0 / 3.0) * e0).epsilon(1e-8));
  CHECK_THROWS_AS(linear_ground_state(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("bounds at equal masses") {
  const double e0 = airy_e0();
  CHECK(bound_e_prime(1.0) / e0 == doctest::Approx(2.0 + std::cbrt(0.5)).epsilon(1e-12));
  CHECK(bound_e_prime(1.0) / e0 == doctest::Approx(2.7937).epsilon(1e-4));
  CHECK(bound_e_double_prime(1.0) / e0 == doctest::Approx(2.6109).epsilon(1e-4));
  CHECK(threshold(1.0) == doctest::Approx(2.0 * e0).epsilon(1e-12));
}

TEST_CASE("heavy quark limits") {
  const double e0 = airy_e0();
  const double big = 1e12;
  CHECK(bound_e_prime(big) / e0 == doctest::Approx(1.0 + std::cbrt(0.25)).epsilon(1e-4));
  CHECK(bound_e_double_prime(big) / e0 ==
        doctest::Approx(std::cbrt(0.75) + std::cbrt(0.25)).epsilon(1e-4));
  CHECK(threshold(big) / e0 == doctest::Approx(2.0 * std::cbrt(0.5)).epsilon(1e-4));
  CHECK(bound_e_double_prime(big) < threshold(big));
}

TEST_CASE("orderings across mass ratios") {
  double previous = threshold(1e-3);
  for (double lg = -3.0; lg <= 6.0; lg += 0.05) {
    const double m = std::pow(10.0, lg);
    CHECK(bound_e_prime(m) > threshold(m));
    CHECK(bound_e_double_prime(m) < bound_e_prime(m));
    if (lg > -3.0) CHECK(threshold(m) < previous);
    previous = threshold(m);
  }
}

TEST_CASE("crossover") {
  const Crossover c = crossover();
  CHECK(c.mass_ratio > 6350);
  CHECK(c.mass_ratio < 6450);
  CHECK(crossover_mass() == c.mass_ratio);
  CHECK(bound_e_double_prime(c.mass_ratio * 1.01) < threshold(c.mass_ratio * 1.01));
  CHECK(bound_e_double_prime(c.mass_ratio / 1.01) > threshold(c.mass_ratio / 1.01));
  CHECK(c.e_double_prime == doctest::Approx(c.e_threshold).epsilon(1e-9));
  // the ratio does not depend on the light mass
  CHECK(crossover(3.0).mass_ratio == doctest::Approx(c.mass_ratio).epsilon(1e-6));
}

TEST_CASE("bound curve") {
  const auto curve = bound_curve(1.0, 1e6, 200);
  REQUIRE(curve.size() == 200);
  const double e0 = airy_e0();
  CHECK(curve.front().mass_ratio == 1.0);
  CHECK(curve.back().mass_ratio == doctest::Approx(1e6));
  CHECK(curve.front().e_prime == doctest::Approx(bound_e_prime(1.0) / e0));
  CHECK(curve.back().e_double_prime == doctest::Approx(bound_e_double_prime(1e6) / e0));
  CHECK(curve.back().e_threshold == doctest::Approx(threshold(1e6) / e0));
  const double m_star = crossover_mass();
  for (const auto& p : curve) {
    CHECK(p.e_double_prime < p.e_prime);
    if (p.mass_ratio < m_star) CHECK(p.e_double_prime > p.e_threshold);
    if (p.mass_ratio > m_star) CHECK(p.e_double_prime < p.e_threshold);
  }
  CHECK_THROWS_AS(bound_curve(10.0, 1.0, 5), std::invalid_argument);
  CHECK_THROWS_AS(bound_curve(1.0, 10.0, 1), std::invalid_argument);

  std::ostringstream out;
  write_curve_csv(out, bound_curve(1.0, 100.0, 3));
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "M,E_prime_over_e0,E_dprime_over_e0,E_th_over_e0");
  int rows = 0;
  for (std::string row; std::getline(lines, row);) ++rows;
  CHECK(rows == 3);
}
