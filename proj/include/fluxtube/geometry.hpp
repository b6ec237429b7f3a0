#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "fluxtube/vec3.hpp"

namespace fluxtube {

// Two quarks (v1, v2) and two antiquarks (v3, v4).
struct TetraConfig {
  Vec3 v1;
  Vec3 v2;
  Vec3 v3;
  Vec3 v4;

  std::array<Vec3, 4> points() const { return {v1, v2, v3, v4}; }
  friend bool operator==(const TetraConfig&, const TetraConfig&) = default;
};

// Relative coordinates: quark pair, antiquark pair, pair-to-pair separation.
struct JacobiCoords {
  Vec3 x;  // v2 - v1
  Vec3 y;  // v4 - v3
  Vec3 z;  // (v3 + v4 - v1 - v2) / 2
};

// 3x3 rotation (or any linear map) acting on column vectors.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  Vec3 operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
  }
};

JacobiCoords jacobi(const TetraConfig& config);

// Inverse of jacobi with the centroid of the four points placed at the origin.
TetraConfig from_jacobi(const JacobiCoords& coords);

bool is_finite(const TetraConfig& config);

// Throws std::invalid_argument when any coordinate is NaN or infinite.
void require_finite(const TetraConfig& config);

double distance(const TetraConfig& config, int i, int j);

// Largest pairwise distance among the four points.
double diameter(const TetraConfig& config);

TetraConfig translated(const TetraConfig& config, const Vec3& offset);
TetraConfig scaled(const TetraConfig& config, double factor);
TetraConfig transformed(const TetraConfig& config, const Mat3& rotation);

// Rescales about the centroid so the diameter becomes 1; configurations
// with zero diameter are returned unchanged.
TetraConfig normalized_to_unit_diameter(const TetraConfig& config);

// Rotation by `angle` radians about `axis` (need not be unit length).
Mat3 rotation_about(const Vec3& axis, double angle);

// Uniformly distributed rotation drawn from a 64-bit seed.
Mat3 random_rotation(std::uint64_t seed);

// Four points sampled independently and uniformly in [-scale, scale]^3.
// Deterministic for a fixed seed. Throws std::invalid_argument if scale <= 0.
TetraConfig random_config(std::uint64_t seed, double scale);

// {"v1":[x,y,z], "v2":[...], "v3":[...], "v4":[...]}
void to_json(nlohmann::json& j, const Vec3& v);
void from_json(const nlohmann::json& j, Vec3& v);
void to_json(nlohmann::json& j, const TetraConfig& config);
void from_json(const nlohmann::json& j, TetraConfig& config);

// Parses a configuration document; throws std::invalid_argument on malformed
// or non-finite input.
TetraConfig parse_config(const std::string& text);
TetraConfig load_config(const std::filesystem::path& path);

}  // namespace fluxtube
