#pragma once

#include "pendcart/state.hpp"

namespace pendcart {

// Cart-pendulum in normalized coordinates: unit lengths/masses except the
// inertial coupling b in (0, 1).
struct PlantParams {
  double b = 0.238;
};

// Kinetic-energy metric in (theta, x); doubles as the mass matrix.
Mat2 mass_matrix(const PlantParams& p, double theta);

// Christoffel quadratic Gamma(v, v) of the kinetic metric; only theta_dot^2
// enters because the metric depends on theta alone.
Vec2 christoffel_quadratic(const PlantParams& p, double theta, double theta_dot);

// Acceleration with no applied force: -Gamma(v,v) - M^{-1} grad V,
// V(theta) = cos(theta).
Vec2 free_accel(const PlantParams& p, const State& s);

// Acceleration under a cart force u: free_accel + M^{-1} (0, u).
Vec2 forced_accel(const PlantParams& p, const State& s, double u);

// Linearization at the upright equilibrium: xdot = A x + B u.
struct LinearPlant {
  Mat4 A;
  Vec4 B;
};
LinearPlant linearize(const PlantParams& p);

}  // namespace pendcart
