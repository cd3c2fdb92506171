#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace wr {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  constexpr double norm2() const { return dot(*this); }

  Vec3 normalized() const {
    const double n = norm();
    if (!(n > 0.0)) throw std::domain_error("Vec3::normalized: zero vector");
    return *this / n;
  }

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline constexpr double dot(const Vec3& a, const Vec3& b) { return a.dot(b); }
inline constexpr Vec3 cross(const Vec3& a, const Vec3& b) { return a.cross(b); }
inline constexpr double triple(const Vec3& a, const Vec3& b, const Vec3& c) {
  return a.dot(b.cross(c));
}

/// Angle between two vectors in [0, pi], robust for nearly parallel and
/// nearly antipodal inputs (atan2 form, no acos cancellation).
inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(cross(a, b).norm(), dot(a, b));
}

/// A direction on S^2. Normalizes on construction; norm stays 1 within 1e-12.
class UnitVec3 {
 public:
  UnitVec3() : v_(1.0, 0.0, 0.0) {}
  explicit UnitVec3(const Vec3& v) : v_(v.normalized()) {}
  UnitVec3(double x, double y, double z) : UnitVec3(Vec3{x, y, z}) {}

  const Vec3& vec() const { return v_; }
  operator const Vec3&() const { return v_; }
  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }

  UnitVec3 operator-() const { UnitVec3 r; r.v_ = -v_; return r; }

 private:
  Vec3 v_;
};

inline double dot(const UnitVec3& a, const UnitVec3& b) { return dot(a.vec(), b.vec()); }
inline Vec3 cross(const UnitVec3& a, const UnitVec3& b) { return cross(a.vec(), b.vec()); }
inline double angle_between(const UnitVec3& a, const UnitVec3& b) {
  return angle_between(a.vec(), b.vec());
}

/// Rodrigues rotation of v about unit axis by angle (radians).
inline Vec3 rotate_about(const Vec3& v, const UnitVec3& axis, double angle) {
  const Vec3& k = axis.vec();
  const double c = std::cos(angle), s = std::sin(angle);
  return v * c + cross(k, v) * s + k * (dot(k, v) * (1.0 - c));
}

}  // namespace wr
