#include "pendcart/digital_loop.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pendcart {

namespace {

// Matrix exponential by scaling-and-squaring over a Taylor series; plenty for
// these well-conditioned 4x4/5x5 blocks (series truncated far below 1e-10).
template <typename M>
M expm(const M& a) {
  const double norm = a.template lpNorm<Eigen::Infinity>();
  int squarings = 0;
  M scaled = a;
  if (norm > 0.5) {
    squarings = std::max(0, int(std::ceil(std::log2(norm / 0.5))));
    scaled = a / std::pow(2.0, squarings);
  }
  M result = M::Identity();
  M term = M::Identity();
  for (int k = 1; k <= 24; ++k) {
    term = M(term * scaled) / double(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = M(result * result);
  return result;
}

}  // namespace

Discretization discretize(const LinearPlant& lp, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("discretize: tau must be > 0");
  // exp(tau * [[A, B], [0, 0]]) = [[A_d, B_d], [0, I]].
  Eigen::Matrix<double, 5, 5> block = Eigen::Matrix<double, 5, 5>::Zero();
  block.topLeftCorner<4, 4>() = tau * lp.A;
  block.topRightCorner<4, 1>() = tau * lp.B;
  const Eigen::Matrix<double, 5, 5> e = expm(block);
  Discretization d;
  d.A_d = e.topLeftCorner<4, 4>();
  d.B_d = e.topRightCorner<4, 1>();
  return d;
}

DiscreteGains DiscreteGains::preset_paper_sec3(const PlantParams& p) {
  DiscreteGains dg;
  dg.tau = 0.0143;
  const Discretization d = discretize(linearize(p), dg.tau);
  dg.A_d = d.A_d;
  dg.B_d = d.B_d;
  dg.C << 1, 0, 0, 0, 0, 1, 0, 0;
  dg.G_d << 0.168, 0.0, -0.0001, 0.165, 0.509, 0.0, -0.0039, 0.473;
  return dg;
}

Vec4 observer_step(const DiscreteGains& dg, const Vec4& x_hat, const Vec2& y_k,
                   double u_k) {
  return dg.A_d * x_hat + dg.B_d * u_k + dg.G_d * (y_k - dg.C * x_hat);
}

std::array<double, 4> observer_moduli(const DiscreteGains& dg) {
  const Mat4 m = dg.A_d - dg.G_d * dg.C;
  const Eigen::Vector4cd eigs = Eigen::EigenSolver<Mat4>(m).eigenvalues();
  std::array<double, 4> mods{};
  for (int i = 0; i < 4; ++i) mods[i] = std::abs(eigs[i]);
  std::sort(mods.begin(), mods.end());
  return mods;
}

double observer_spectral_radius(const DiscreteGains& dg) {
  return observer_moduli(dg)[3];
}

Mat42 place_observer_gain(const Mat4& A_d, const Mat24& C, double tau,
                          const std::vector<std::complex<double>>& poles) {
  if (poles.size() != 4) {
    throw std::invalid_argument("place_observer_gain: need 4 poles");
  }
  // Discrete targets z_i = exp(tau * lambda_i).
  std::array<std::complex<double>, 4> z;
  for (int i = 0; i < 4; ++i) z[i] = std::exp(tau * poles[i]);

  // Rank-one gain G_d = l * w': single-output Ackermann on the combined
  // output w'C. Try a few combinations in case one is unobservable.
  const std::array<Vec2, 3> combos = {Vec2{1.0, 1.0}, Vec2{1.0, 0.25},
                                      Vec2{0.25, 1.0}};
  for (const Vec2& w : combos) {
    const Eigen::RowVector4d c = w.transpose() * C;
    Mat4 obs;
    Eigen::RowVector4d row = c;
    for (int i = 0; i < 4; ++i) {
      obs.row(i) = row;
      row = row * A_d;
    }
    // Scale-free observability check: with A_d near the identity the raw
    // determinant shrinks like tau^6 even for well-posed problems.
    const Eigen::JacobiSVD<Mat4> svd(obs, Eigen::ComputeFullU |
                                              Eigen::ComputeFullV);
    const double smin = svd.singularValues()(3);
    const double smax = svd.singularValues()(0);
    if (!(smin > 1e-13 * smax)) continue;
    // Characteristic polynomial at A_d: prod (A_d - z_i I), real for a
    // conjugate-closed pole set.
    Eigen::Matrix4cd delta = Eigen::Matrix4cd::Identity();
    for (int i = 0; i < 4; ++i) {
      delta = delta * (A_d.cast<std::complex<double>>() -
                       z[i] * Eigen::Matrix4cd::Identity());
    }
    const Vec4 l = delta.real() * svd.solve(Vec4{0, 0, 0, 1});
    return l * w.transpose();
  }
  throw std::runtime_error(
      "place_observer_gain: combined output not observable");
}

}  // namespace pendcart
