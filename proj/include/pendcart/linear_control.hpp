#pragma once

#include "pendcart/matching_law.hpp"

namespace pendcart {

// Gains of the comparison law u = p1 theta + p2 x + d1 theta_dot + d2 x_dot,
// defined as the linearization of the matching law at the origin.
struct LinearGains {
  double p1 = 0, p2 = 0, d1 = 0, d2 = 0;
  Vec4 vec() const { return {p1, p2, d1, d2}; }
};

// Central finite differences (step 1e-6) of control_force at the origin.
// Verifies the structural identity d1*sigma0 + d2*mu0 = 0 and that
// A + B*gains is Hurwitz; throws std::runtime_error otherwise.
LinearGains derive_gains(const MatchingLaw& law);

double linear_u(const LinearGains& g, const State& s);

// Eigenvalues of the closed-loop matrix A + B*gains.
Eigen::Vector4cd closed_loop_eigs(const PlantParams& p, const LinearGains& g);

}  // namespace pendcart
