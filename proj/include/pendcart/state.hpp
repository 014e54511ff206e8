#pragma once

#include <Eigen/Dense>

#include <cmath>

namespace pendcart {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

// Plant state, ordering (theta, x, theta_dot, x_dot): pendulum angle from the
// upright, cart position, and their rates.
struct State {
  double theta = 0.0;
  double x = 0.0;
  double theta_dot = 0.0;
  double x_dot = 0.0;

  Vec4 vec() const { return {theta, x, theta_dot, x_dot}; }
  static State from(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

  double inf_norm() const {
    return std::max(std::max(std::abs(theta), std::abs(x)),
                    std::max(std::abs(theta_dot), std::abs(x_dot)));
  }
  bool finite() const {
    return std::isfinite(theta) && std::isfinite(x) &&
           std::isfinite(theta_dot) && std::isfinite(x_dot);
  }
};

}  // namespace pendcart
