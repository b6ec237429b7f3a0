#include <doctest.h>

#include <cmath>

#include "fluxtube/geometry.hpp"

using namespace fluxtube;

namespace {
bool near(const Vec3& a, const Vec3& b, double tol = 1e-12) { return distance(a, b) <= tol; }
}  // namespace

TEST_CASE("jacobi coordinates of simple configurations") {
  const auto zero = jacobi(TetraConfig{});
  CHECK(norm(zero.x) == 0.0);
  CHECK(norm(zero.y) == 0.0);
  CHECK(norm(zero.z) == 0.0);

  const auto j = jacobi({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
  CHECK(near(j.x, {1, 0, 0}));
  CHECK(near(j.y, {1, 0, 0}));
  CHECK(near(j.z, {0, 1, 0}));
}

TEST_CASE("jacobi is translation invariant and invertible up to the centroid") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const TetraConfig c = random_config(seed, 3.0);
    const auto a = jacobi(c);
    const auto b = jacobi(translated(c, {0.3, -7.0, 2.5}));
    CHECK(near(a.x, b.x, 1e-12));
    CHECK(near(a.y, b.y, 1e-12));
    CHECK(near(a.z, b.z, 1e-12));

    const TetraConfig back = from_jacobi(a);
    const auto again = jacobi(back);
    CHECK(near(again.x, a.x, 1e-12));
    CHECK(near(again.z, a.z, 1e-12));
    Vec3 centroid{};
    for (const auto& p : back.points()) centroid += p / 4.0;
    CHECK(norm(centroid) < 1e-12);
  }
}

TEST_CASE("random configurations are seeded and bounded") {
  CHECK(random_config(1, 1.0) == random_config(1, 1.0));
  CHECK_FALSE(random_config(1, 1.0) == random_config(2, 1.0));
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const double scale = 0.5 + static_cast<double>(seed % 7);
    for (const auto& p : random_config(seed, scale).points()) {
      CHECK(std::abs(p.x) <= scale);
      CHECK(std::abs(p.y) <= scale);
      CHECK(std::abs(p.z) <= scale);
    }
  }
}

TEST_CASE("distances, diameter and normalization") {
  const TetraConfig c{{0, 0, 0}, {3, 0, 0}, {0, 4, 0}, {3, 4, 0}};
  CHECK(distance(c, 1, 2) == doctest::Approx(3.0));
  CHECK(distance(c, 1, 4) == doctest::Approx(5.0));
  CHECK(diameter(c) == doctest::Approx(5.0));
  CHECK(diameter(normalized_to_unit_diameter(c)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(distance(c, 0, 1), std::out_of_range);
}

TEST_CASE("rotations are orthogonal") {
  const Mat3 r = random_rotation(5);
  const Vec3 v{1.0, -2.0, 0.5};
  CHECK(norm(r * v) == doctest::Approx(norm(v)).epsilon(1e-14));
  const Mat3 quarter = rotation_about({0, 0, 1}, M_PI / 2);
  CHECK(near(quarter * Vec3{1, 0, 0}, {0, 1, 0}, 1e-15));
}

TEST_CASE("non-finite configurations are rejected") {
  TetraConfig c;
  c.v3.y = std::nan("");
  CHECK_FALSE(is_finite(c));
  CHECK_THROWS_AS(require_finite(c), std::invalid_argument);
}

TEST_CASE("configuration files round-trip through JSON") {
  const TetraConfig c = random_config(9, 2.0);
  const nlohmann::json j = c;
  CHECK(parse_config(j.dump()) == c);
  CHECK_THROWS(parse_config(R"({"v1":[0,0,0],"v2":[1,0,0],"v3":[0,1,0]})"));
  CHECK_THROWS(parse_config(R"({"v1":[0,0],"v2":[1,0,0],"v3":[0,1,0],"v4":[1,1,0]})"));
  CHECK_THROWS(parse_config("not json"));
}
