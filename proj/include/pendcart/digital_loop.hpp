#pragma once

#include "pendcart/plant.hpp"

#include <array>
#include <complex>
#include <vector>

namespace pendcart {

using Mat24 = Eigen::Matrix<double, 2, 4>;
using Mat42 = Eigen::Matrix<double, 4, 2>;

// Zero-order-hold discretization of the linearized plant at sample time tau:
// A_d = exp(tau A), B_d = integral_0^tau exp(sA) ds B. Both come from one
// exponential of the (A, B) block matrix, accurate to 1e-10.
struct Discretization {
  Mat4 A_d;
  Vec4 B_d;
};
Discretization discretize(const LinearPlant& lp, double tau);

// Discrete Luenberger observer data. C measures (theta, x).
struct DiscreteGains {
  double tau = 0.0143;
  Mat4 A_d;
  Vec4 B_d;
  Mat24 C;
  Mat42 G_d;

  // Named preset "paper-sec3": the reference observer gain matrix at
  // tau = 0.0143, with A_d/B_d computed from the plant.
  static DiscreteGains preset_paper_sec3(const PlantParams& p = {});
};

// x_hat_{k+1} = A_d x_hat_k + B_d u_k + G_d (y_k - C x_hat_k).
Vec4 observer_step(const DiscreteGains& dg, const Vec4& x_hat, const Vec2& y_k,
                   double u_k);

// Moduli of the eigenvalues of A_d - G_d C, sorted ascending, and their max.
std::array<double, 4> observer_moduli(const DiscreteGains& dg);
double observer_spectral_radius(const DiscreteGains& dg);

// Observer gain placing the eigenvalues of A_d - G_d C at exp(tau*poles) for
// user-supplied continuous poles (conjugate-closed set of 4). Rank-one gain
// via the dual Ackermann formula on a combined output.
Mat42 place_observer_gain(const Mat4& A_d, const Mat24& C, double tau,
                          const std::vector<std::complex<double>>& poles);

}  // namespace pendcart
