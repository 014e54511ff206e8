#pragma once

#include "pendcart/design_params.hpp"
#include "pendcart/plant.hpp"
#include "pendcart/state.hpp"

#include <array>
#include <stdexcept>
#include <utility>

namespace pendcart {

// Raised when a state leaves the region where the synthesized geometry is
// usable: |theta| >= pi/2 (mu -> 0), an indefinite metric, or a violated
// matching constraint.
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The matching control law: piecewise design functions, the characteristic
// coordinate y, the synthesized metric g_hat / potential v_hat / dissipation
// c_hat, the cart control force, and the energy function with its rate.
//
// All members are pure functions of (params, point); instances are cheap and
// safe to share across threads.
class MatchingLaw {
 public:
  explicit MatchingLaw(DesignParams p);

  const DesignParams& params() const { return p_; }

  // Piecewise design functions of theta.
  double mu(double theta) const;
  double sigma(double theta) const;
  double phi(double theta) const;

  // Residuals of the exact-derivative identity behind the construction:
  // r1 = d/dtheta(sigma + b cos(theta) mu) + 2 b sin(theta) mu, r2 = its
  // x-derivative. Both vanish identically in each smooth region.
  // Rejects theta within 1e-6 of the switching angle.
  std::pair<double, double> lambda_residual(double theta) const;

  // Characteristic coordinate y(theta, x); continuous across the theta
  // switching surfaces.
  double y_coord(double theta, double x) const;

  // Region bookkeeping: which smooth branch a point lies on. Used to pin
  // finite-difference stencils and to detect switching events.
  struct RegionIds {
    bool theta_inner = true;
    bool y_inner = true;
    bool operator==(const RegionIds&) const = default;
  };
  RegionIds region_ids(double theta, double x) const;

  // Synthesized 2x2 metric. Throws GeometryError for |theta| >= pi/2.
  Mat2 g_hat(double theta, double x) const;
  // Same, with the smooth branch forced to `pin` (used by stencils near the
  // switching surfaces).
  Mat2 g_hat_pinned(double theta, double x, RegionIds pin) const;

  // Quadrature form of g_hat(0,0): the characteristic-line integral evaluated
  // with adaptive numerics instead of the closed form. Test oracle.
  double g_hat11_quadrature(double theta, double x) const;

  // Left-hand side of the metric transport equation evaluated with central
  // finite differences (step 1e-6). Rejects points within 1e-3 of a
  // switching surface.
  double g_hat_pde_residual(double theta, double x) const;

  // Synthesized potential and its analytic gradient (d/dtheta, d/dx).
  double v_hat(double theta, double x) const;
  Vec2 v_hat_grad(double theta, double x) const;
  Vec2 v_hat_grad_pinned(double theta, double x, RegionIds pin) const;
  // Finite-difference residual of sigma dV/dtheta + mu dV/dx + sin(theta).
  double v_hat_pde_residual(double theta, double x) const;

  // Dissipation vector (c1, c2); odd in the velocities.
  Vec2 c_hat(const State& s) const;

  // Levi-Civita symbols of g_hat, Gamma[k](i,j), via pinned central finite
  // differences of the metric components. Throws GeometryError if the metric
  // is not positive definite at the point.
  std::array<Mat2, 2> christoffel_hat(double theta, double x) const;

  // Cart force of the law. If residual_out is non-null it receives the
  // unactuated-direction constraint residual (zero up to round-off).
  // Throws GeometryError on domain failures or |residual| > 1e-3.
  double control_force(const State& s, double* residual_out = nullptr) const;

  // Energy function H = 0.5 v' g_hat v + v_hat and its time derivative along
  // the closed loop, -c_hat(v)' g_hat v.
  double lyapunov(const State& s) const;
  double lyapunov_rate(const State& s) const;

 private:
  struct ThetaCoefs {
    double sigma, mu_r, phi;
    bool inner;
  };
  struct YCoefs {
    double h, w;
    bool inner;
  };
  ThetaCoefs theta_coefs(bool inner) const;
  YCoefs y_coefs(bool inner) const;
  // Closed-form theta-derivative of the metric branch and the exact
  // connection built from it; the control path uses these so that the
  // constraint residual sits at round-off rather than at stencil noise.
  Mat2 metric_branch_dtheta(double theta, ThetaCoefs tc, YCoefs yc) const;
  std::array<Mat2, 2> christoffel_exact(double theta, double x,
                                        RegionIds pin) const;
  bool theta_inner(double theta) const { return std::abs(theta) <= p_.theta_L; }
  bool y_inner(double y) const {
    return p_.symmetric_y_regions ? std::abs(y) <= p_.y_L : y <= p_.y_L;
  }
  Mat2 metric_branch(double theta, ThetaCoefs tc, YCoefs yc) const;
  void require_definite(const Mat2& g, double theta, double x) const;

  DesignParams p_;
  PlantParams plant_;
  double delta_out_;  // gluing constant of the closed-form metric, outer region
};

}  // namespace pendcart
