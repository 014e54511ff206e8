#include "pendcart/linear_control.hpp"

#include <cmath>
#include <stdexcept>

namespace pendcart {

namespace {
constexpr double kFdStep = 1e-6;
}

LinearGains derive_gains(const MatchingLaw& law) {
  const auto u_at = [&law](int idx, double v) {
    Vec4 s = Vec4::Zero();
    s[idx] = v;
    return law.control_force(State::from(s));
  };
  LinearGains g;
  double* slot[4] = {&g.p1, &g.p2, &g.d1, &g.d2};
  for (int i = 0; i < 4; ++i) {
    *slot[i] = (u_at(i, kFdStep) - u_at(i, -kFdStep)) / (2.0 * kFdStep);
  }

  const DesignParams& dp = law.params();
  const double combo = g.d1 * dp.sigma0 + g.d2 * dp.mu0;
  if (std::abs(combo) > 1e-3 * std::abs(g.d1 * dp.sigma0)) {
    throw std::runtime_error("derive_gains: d1*sigma0 + d2*mu0 != 0");
  }

  const Eigen::Vector4cd eigs = closed_loop_eigs(PlantParams{dp.b}, g);
  for (int i = 0; i < 4; ++i) {
    if (eigs[i].real() >= 0.0) {
      throw std::runtime_error("derive_gains: closed loop is not Hurwitz");
    }
  }
  return g;
}

double linear_u(const LinearGains& g, const State& s) {
  return g.p1 * s.theta + g.p2 * s.x + g.d1 * s.theta_dot + g.d2 * s.x_dot;
}

Eigen::Vector4cd closed_loop_eigs(const PlantParams& p, const LinearGains& g) {
  const LinearPlant lp = linearize(p);
  const Mat4 acl = lp.A + lp.B * g.vec().transpose();
  return Eigen::EigenSolver<Mat4>(acl).eigenvalues();
}

}  // namespace pendcart
