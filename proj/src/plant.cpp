#include "pendcart/plant.hpp"

#include <cmath>

namespace pendcart {

Mat2 mass_matrix(const PlantParams& p, double theta) {
  const double c = p.b * std::cos(theta);
  Mat2 m;
  m << 1.0, c, c, 1.0;
  return m;
}

Vec2 christoffel_quadratic(const PlantParams& p, double theta,
                           double theta_dot) {
  const double s = std::sin(theta), c = std::cos(theta);
  const double det = 1.0 - p.b * p.b * c * c;
  const double q = theta_dot * theta_dot;
  return {p.b * p.b * s * c / det * q, -p.b * s / det * q};
}

Vec2 free_accel(const PlantParams& p, const State& s) {
  // grad V = (-sin(theta), 0) for V = cos(theta).
  const Vec2 grad_v{-std::sin(s.theta), 0.0};
  const Mat2 m = mass_matrix(p, s.theta);
  return -christoffel_quadratic(p, s.theta, s.theta_dot) -
         Vec2(m.inverse() * grad_v);
}

Vec2 forced_accel(const PlantParams& p, const State& s, double u) {
  const Mat2 m = mass_matrix(p, s.theta);
  return free_accel(p, s) + Vec2(m.inverse() * Vec2{0.0, u});
}

LinearPlant linearize(const PlantParams& p) {
  const double k1 = 1.0 / (1.0 - p.b * p.b);
  const double k2 = -p.b * k1;
  LinearPlant lp;
  lp.A.setZero();
  lp.A(0, 2) = 1.0;
  lp.A(1, 3) = 1.0;
  lp.A(2, 0) = k1;
  lp.A(3, 0) = k2;
  lp.B = {0.0, 0.0, k2, k1};
  return lp;
}

}  // namespace pendcart
