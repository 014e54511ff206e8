#include "pendcart/matching_law.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace pendcart {

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kBandHalfWidth = 1e-3;
constexpr double kConstraintTol = 1e-3;

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Adaptive Simpson on a smooth segment.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double eps,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, eps / 2, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, eps / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps = 1e-13) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  return adaptive_simpson(f, a, b, f(a), f(m), f(b), eps, 48);
}

}  // namespace

MatchingLaw::MatchingLaw(DesignParams p) : p_(p), plant_{p.b} {
  // Gluing constant making the closed-form metric component equal the
  // characteristic-line integral across the theta switching surface.
  const double sec2 = 1.0 / (std::cos(p_.theta_L) * std::cos(p_.theta_L));
  delta_out_ = sec2 * (p_.sigma0 / (p_.mu0 * p_.mu0) -
                       p_.sigma_inf / (p_.mu_inf * p_.mu_inf)) +
               p_.b * (1.0 / p_.mu_inf - 1.0 / p_.mu0);
}

MatchingLaw::ThetaCoefs MatchingLaw::theta_coefs(bool inner) const {
  if (inner) return {p_.sigma0, p_.mu0, p_.phi0, true};
  return {p_.sigma_inf, p_.mu_inf, p_.phi_inf, false};
}

MatchingLaw::YCoefs MatchingLaw::y_coefs(bool inner) const {
  if (inner) return {p_.h0, p_.w0, true};
  return {p_.h_inf, p_.w_inf, false};
}

double MatchingLaw::mu(double theta) const {
  return theta_coefs(theta_inner(theta)).mu_r * std::cos(theta);
}

double MatchingLaw::sigma(double theta) const {
  return theta_coefs(theta_inner(theta)).sigma;
}

double MatchingLaw::phi(double theta) const {
  return theta_coefs(theta_inner(theta)).phi;
}

std::pair<double, double> MatchingLaw::lambda_residual(double theta) const {
  if (std::abs(std::abs(theta) - p_.theta_L) < 1e-6) {
    throw GeometryError("lambda_residual: theta on a switching surface");
  }
  const ThetaCoefs tc = theta_coefs(theta_inner(theta));
  const double s = std::sin(theta), c = std::cos(theta);
  // d/dtheta (sigma + b cos(theta) mu_r cos(theta)) = -2 b mu_r sin cos.
  const double r1 = -2.0 * p_.b * tc.mu_r * s * c + 2.0 * p_.b * s * tc.mu_r * c;
  const double r2 = 0.0;  // sigma, mu independent of x
  return {r1, r2};
}

double MatchingLaw::y_coord(double theta, double x) const {
  if (theta_inner(theta)) {
    return x - (p_.mu0 / p_.sigma0) * std::sin(theta);
  }
  const double sg = sign_of(theta);
  const double sl = std::sin(p_.theta_L) * sg;
  return x - (p_.mu0 / p_.sigma0) * sl -
         (p_.mu_inf / p_.sigma_inf) * (std::sin(theta) - sl);
}

MatchingLaw::RegionIds MatchingLaw::region_ids(double theta, double x) const {
  return {theta_inner(theta), y_inner(y_coord(theta, x))};
}

Mat2 MatchingLaw::metric_branch(double theta, ThetaCoefs tc, YCoefs yc) const {
  if (std::abs(theta) >= M_PI / 2.0) {
    throw GeometryError("g_hat: |theta| >= pi/2, outside the working domain");
  }
  const double c = std::cos(theta);
  const double m = tc.mu_r * c;
  if (std::abs(m) < 1e-12) {
    throw GeometryError("g_hat: mu(theta) = 0, |theta| >= pi/2");
  }
  const double sg = tc.sigma;
  const double h = yc.h + (tc.inner ? 0.0 : delta_out_);
  const double g11 = 1.0 / sg - p_.sigma0 * m * m / (p_.mu0 * p_.mu0 * sg * sg) -
                     p_.b * c * m / (sg * sg) + p_.b * m * m / (p_.mu0 * sg * sg) +
                     (m * m / (sg * sg)) * h;
  const double g12 = (1.0 - sg * g11) / m;
  const double g22 = (p_.b * c - sg * g12) / m;
  Mat2 g;
  g << g11, g12, g12, g22;
  return g;
}

Mat2 MatchingLaw::g_hat(double theta, double x) const {
  return g_hat_pinned(theta, x, region_ids(theta, x));
}

Mat2 MatchingLaw::g_hat_pinned(double theta, double x, RegionIds pin) const {
  (void)x;  // within a smooth branch the metric depends on theta alone
  return metric_branch(theta, theta_coefs(pin.theta_inner),
                       y_coefs(pin.y_inner));
}

double MatchingLaw::g_hat11_quadrature(double theta, double x) const {
  if (std::abs(theta) >= M_PI / 2.0) {
    throw GeometryError("g_hat: |theta| >= pi/2, outside the working domain");
  }
  // Oriented path 0 -> (switching points) -> theta, each segment smooth.
  std::vector<double> knots{0.0};
  for (double t : {-p_.theta_L, p_.theta_L}) {
    if (std::min(0.0, theta) < t && t < std::max(0.0, theta)) knots.push_back(t);
  }
  if (theta >= 0.0) {
    std::sort(knots.begin(), knots.end());
  } else {
    std::sort(knots.begin(), knots.end(), std::greater<double>());
  }
  knots.push_back(theta);
  double j = 0.0;
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    // Region coefficients pinned from the segment midpoint so that endpoint
    // evaluations on a switching surface stay on the segment's branch.
    const ThetaCoefs tc =
        theta_coefs(theta_inner(0.5 * (knots[i] + knots[i + 1])));
    const auto integrand = [&tc](double t) {
      const double m = tc.mu_r * std::cos(t);
      const double mp = -tc.mu_r * std::sin(t);
      return tc.sigma * mp / (m * m * m);
    };
    j += integrate(integrand, knots[i], knots[i + 1]);
  }
  const double m = mu(theta), sg = sigma(theta);
  return (m * m / (sg * sg)) * (-2.0 * j + y_coefs(y_inner(y_coord(theta, x))).h);
}

double MatchingLaw::g_hat_pde_residual(double theta, double x) const {
  if (std::abs(std::abs(theta) - p_.theta_L) < kBandHalfWidth ||
      std::abs(std::abs(y_coord(theta, x)) - p_.y_L) < kBandHalfWidth) {
    throw GeometryError("g_hat_pde_residual: inside a switching band");
  }
  const auto g11 = [this](double th, double xx) {
    return g_hat(th, xx)(0, 0);
  };
  const double dth =
      (g11(theta + kFdStep, x) - g11(theta - kFdStep, x)) / (2.0 * kFdStep);
  const double dx =
      (g11(theta, x + kFdStep) - g11(theta, x - kFdStep)) / (2.0 * kFdStep);
  const ThetaCoefs tc = theta_coefs(theta_inner(theta));
  const double m = tc.mu_r * std::cos(theta);
  const double mp = -tc.mu_r * std::sin(theta);
  const double sp = 0.0;  // sigma piecewise constant
  const double sg = tc.sigma;
  return sg * dth + m * dx + 2.0 * (sp - (sg / m) * mp) * g11(theta, x) +
         2.0 * mp / m;
}

double MatchingLaw::v_hat(double theta, double x) const {
  const double y = y_coord(theta, x);
  const double a = std::abs(theta);
  double integral;  // of sin(t)/sigma(t), 0..theta (even in theta)
  if (a <= p_.theta_L) {
    integral = (1.0 - std::cos(a)) / p_.sigma0;
  } else {
    integral = (1.0 - std::cos(p_.theta_L)) / p_.sigma0 +
               (std::cos(p_.theta_L) - std::cos(a)) / p_.sigma_inf;
  }
  return 0.5 * y_coefs(y_inner(y)).w * y * y - integral;
}

Vec2 MatchingLaw::v_hat_grad(double theta, double x) const {
  return v_hat_grad_pinned(theta, x, region_ids(theta, x));
}

Vec2 MatchingLaw::v_hat_grad_pinned(double theta, double x,
                                    RegionIds pin) const {
  const ThetaCoefs tc = theta_coefs(pin.theta_inner);
  const double y = y_coord(theta, x);
  const double w = y_coefs(pin.y_inner).w;
  const double m = tc.mu_r * std::cos(theta);
  const double dx = w * y;
  const double dth = -w * y * m / tc.sigma - std::sin(theta) / tc.sigma;
  return {dth, dx};
}

double MatchingLaw::v_hat_pde_residual(double theta, double x) const {
  if (std::abs(std::abs(theta) - p_.theta_L) < kBandHalfWidth ||
      std::abs(std::abs(y_coord(theta, x)) - p_.y_L) < kBandHalfWidth) {
    throw GeometryError("v_hat_pde_residual: inside a switching band");
  }
  const double dth =
      (v_hat(theta + kFdStep, x) - v_hat(theta - kFdStep, x)) / (2.0 * kFdStep);
  const double dx =
      (v_hat(theta, x + kFdStep) - v_hat(theta, x - kFdStep)) / (2.0 * kFdStep);
  return sigma(theta) * dth + mu(theta) * dx + std::sin(theta);
}

Vec2 MatchingLaw::c_hat(const State& s) const {
  const ThetaCoefs tc = theta_coefs(theta_inner(s.theta));
  double q;
  if (p_.region_local_dissipation) {
    q = tc.mu_r * std::cos(s.theta) * s.theta_dot - tc.sigma * s.x_dot;
  } else {
    q = p_.mu0 * std::cos(s.theta) * s.theta_dot - p_.sigma0 * s.x_dot;
  }
  // Sign fixed so the energy rate -c_hat' g_hat v is nonpositive.
  const double c2 = -tc.phi * q;
  const double c1 = -p_.b * std::cos(s.theta) * c2;
  return {c1, c2};
}

void MatchingLaw::require_definite(const Mat2& g, double theta,
                                   double x) const {
  // Symmetric 2x2 is positive definite iff trace > 0 and det > 0.
  if (!(g(0, 0) + g(1, 1) > 0.0) ||
      !(g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) > 0.0)) {
    throw GeometryError("g_hat indefinite at theta=" + std::to_string(theta) +
                        " x=" + std::to_string(x));
  }
}

namespace {
// Levi-Civita contraction of coordinate derivatives of the metric.
std::array<Mat2, 2> contract_symbols(const Mat2& ginv,
                                     const std::array<Mat2, 2>& dg) {
  std::array<Mat2, 2> gam;
  for (int k = 0; k < 2; ++k) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        double acc = 0.0;
        for (int m = 0; m < 2; ++m) {
          acc += ginv(k, m) * (dg[i](m, j) + dg[j](m, i) - dg[m](i, j));
        }
        gam[k](i, j) = 0.5 * acc;
      }
    }
  }
  return gam;
}
}  // namespace

std::array<Mat2, 2> MatchingLaw::christoffel_hat(double theta, double x) const {
  const RegionIds pin = region_ids(theta, x);
  const Mat2 g0 = g_hat_pinned(theta, x, pin);
  require_definite(g0, theta, x);
  const std::array<Mat2, 2> dg = {
      Mat2(((g_hat_pinned(theta + kFdStep, x, pin) -
             g_hat_pinned(theta - kFdStep, x, pin)) /
            (2.0 * kFdStep))),
      Mat2(((g_hat_pinned(theta, x + kFdStep, pin) -
             g_hat_pinned(theta, x - kFdStep, pin)) /
            (2.0 * kFdStep)))};
  return contract_symbols(g0.inverse(), dg);
}

Mat2 MatchingLaw::metric_branch_dtheta(double theta, ThetaCoefs tc,
                                       YCoefs yc) const {
  // Exact theta-derivative of metric_branch; within a smooth branch the
  // metric depends on theta alone, so this determines the full connection.
  const Mat2 g = metric_branch(theta, tc, yc);
  const double c = std::cos(theta), sn = std::sin(theta);
  const double m = tc.mu_r * c;
  const double sg = tc.sigma;
  const double h = yc.h + (tc.inner ? 0.0 : delta_out_);
  const double qa =
      (-p_.sigma0 / (p_.mu0 * p_.mu0) + p_.b / p_.mu0 + h) / (sg * sg);
  const double qb = -p_.b / (sg * sg);
  const double t = sn / c;
  Mat2 dg;
  dg(0, 0) = -2.0 * m * sn * (qa * tc.mu_r + qb);
  dg(0, 1) = -sg * dg(0, 0) / m + g(0, 1) * t;
  dg(1, 0) = dg(0, 1);
  dg(1, 1) = (-p_.b * sn - sg * dg(0, 1)) / m + g(1, 1) * t;
  return dg;
}

std::array<Mat2, 2> MatchingLaw::christoffel_exact(double theta, double x,
                                                   RegionIds pin) const {
  const Mat2 g0 = g_hat_pinned(theta, x, pin);
  require_definite(g0, theta, x);
  const std::array<Mat2, 2> dg = {
      metric_branch_dtheta(theta, theta_coefs(pin.theta_inner),
                           y_coefs(pin.y_inner)),
      Mat2(Mat2::Zero())};
  return contract_symbols(g0.inverse(), dg);
}

double MatchingLaw::control_force(const State& s, double* residual_out) const {
  if (std::abs(s.theta) >= std::numbers::pi / 2.0) {
    throw GeometryError("control_force: |theta| >= pi/2");
  }
  const Vec2 v{s.theta_dot, s.x_dot};
  const Vec2 a_free = free_accel(plant_, s);

  const RegionIds pin = region_ids(s.theta, s.x);
  const std::array<Mat2, 2> gam = christoffel_exact(s.theta, s.x, pin);
  const Mat2 g0 = g_hat_pinned(s.theta, s.x, pin);
  const Vec2 gam_vv{double(v.transpose() * gam[0] * v),
                    double(v.transpose() * gam[1] * v)};
  const Vec2 a_target =
      -gam_vv - Vec2(g0.inverse() * v_hat_grad_pinned(s.theta, s.x, pin)) -
      c_hat(s);

  const Vec2 f = a_target - a_free;
  const Vec2 mf = mass_matrix(plant_, s.theta) * f;
  if (residual_out != nullptr) *residual_out = mf[0];
  if (std::abs(mf[0]) > kConstraintTol) {
    throw GeometryError("control_force: matching constraint residual " +
                        std::to_string(mf[0]));
  }
  return mf[1];
}

double MatchingLaw::lyapunov(const State& s) const {
  const Mat2 g0 = g_hat(s.theta, s.x);
  require_definite(g0, s.theta, s.x);
  const Vec2 v{s.theta_dot, s.x_dot};
  return 0.5 * double(v.transpose() * g0 * v) + v_hat(s.theta, s.x);
}

double MatchingLaw::lyapunov_rate(const State& s) const {
  const Mat2 g0 = g_hat(s.theta, s.x);
  require_definite(g0, s.theta, s.x);
  const Vec2 v{s.theta_dot, s.x_dot};
  return -double(c_hat(s).transpose() * g0 * v);
}

}  // namespace pendcart
