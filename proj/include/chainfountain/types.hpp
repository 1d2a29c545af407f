#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace chainfountain {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Raised when an argument lies outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when two inputs that describe the same state disagree.
class ConsistencyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative method fails to meet its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Planar vector in the fixed frame (e_x horizontal, e_y vertical upward).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;

  [[nodiscard]] constexpr double dot(Vec2 other) const { return x * other.x + y * other.y; }
  [[nodiscard]] constexpr double norm2() const { return dot(*this); }
  [[nodiscard]] double norm() const { return std::sqrt(norm2()); }
};

/// Unit tangent making angle `theta` with the upward vertical.
inline Vec2 tangent_at(double theta) { return {std::sin(theta), std::cos(theta)}; }

/// Physical constants of the chain and the setup.
struct ChainParams {
  double lambda = 1.0;  ///< mass per unit length [kg/m]
  double g = 9.81;      ///< gravitational acceleration [m/s^2]
  double h1 = 1.0;      ///< drop height below the supporting plane [m]
  double f = 1.0;       ///< shock dissipation fraction, 0 <= f <= 1

  /// Throws DomainError unless lambda, g, h1 > 0 and 0 <= f <= 1.
  void validate() const;

  /// Free-fall speed over the drop height, sqrt(2 h1 g) [m/s].
  [[nodiscard]] double fall_speed() const { return std::sqrt(2.0 * h1 * g); }
};

inline void ChainParams::validate() const {
  if (!(std::isfinite(lambda) && lambda > 0.0)) throw DomainError("lambda must be positive");
  if (!(std::isfinite(g) && g > 0.0)) throw DomainError("g must be positive");
  if (!(std::isfinite(h1) && h1 > 0.0)) throw DomainError("h1 must be positive");
  if (!(f >= 0.0 && f <= 1.0)) throw DomainError("f must lie in [0, 1]");
}

inline double degrees_to_radians(double deg) { return deg * kPi / 180.0; }
inline double radians_to_degrees(double rad) { return rad * 180.0 / kPi; }

}  // namespace chainfountain
