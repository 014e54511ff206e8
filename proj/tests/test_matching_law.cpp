#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <pendcart/matching_law.hpp>

#include <cmath>
#include <random>

using namespace pendcart;

namespace {
MatchingLaw make_law() { return MatchingLaw(DesignParams::preset_paper_2000()); }

// Grid points clear of the switching bands in theta and in y.
bool clear_of_bands(const MatchingLaw& law, double theta, double x,
                    double margin = 2e-3) {
  const DesignParams& p = law.params();
  if (std::abs(std::abs(theta) - p.theta_L) < margin) return false;
  const double y = law.y_coord(theta, x);
  if (std::abs(std::abs(y) - p.y_L) < margin * 20) return false;
  return true;
}
}  // namespace

TEST_CASE("piecewise design functions") {
  const MatchingLaw law = make_law();
  CHECK(law.mu(0.0) == doctest::Approx(17.0));
  CHECK(law.sigma(0.0) == doctest::Approx(-1.59));
  CHECK(law.phi(0.0) == doctest::Approx(1.48));
  CHECK(law.mu(0.5) == doctest::Approx(9.9 * std::cos(0.5)).epsilon(1e-14));
  CHECK(law.sigma(0.5) == doctest::Approx(-0.05));
  CHECK(law.sigma(0.8) == doctest::Approx(-0.05));
  CHECK(law.phi(0.8) == doctest::Approx(0.75));
  // Even in theta.
  CHECK(law.mu(-0.8) == law.mu(0.8));
  CHECK(law.sigma(-0.2) == law.sigma(0.2));
}

TEST_CASE("sigma jump approximately cancels the mu jump") {
  const DesignParams p;
  const double cl = std::cos(p.theta_L);
  const double relation = p.sigma0 + p.b * (p.mu0 - p.mu_inf) * cl * cl;
  CHECK(std::abs(relation - (-0.048)) < 1e-3);
  CHECK(std::abs(relation - p.sigma_inf) < 0.01);
}

TEST_CASE("defining identity residual vanishes in each smooth region") {
  const MatchingLaw law = make_law();
  for (double th : {0.0, 0.1, -0.1, 0.29, -0.29, 0.31, 0.8, -1.0, 1.2}) {
    const auto [r1, r2] = law.lambda_residual(th);
    CHECK(std::abs(r1) < 1e-12);
    CHECK(std::abs(r2) < 1e-12);
  }
  CHECK_THROWS_AS((void)law.lambda_residual(0.3), GeometryError);
  CHECK_THROWS_AS((void)law.lambda_residual(-0.3 + 5e-7), GeometryError);
}

TEST_CASE("characteristic coordinate") {
  const MatchingLaw law = make_law();
  CHECK(law.y_coord(0.0, 0.0) == 0.0);
  CHECK(law.y_coord(0.2, 0.0) ==
        doctest::Approx(2.1241374990666921).epsilon(1e-14));
  // Odd under the reflection (theta, x) -> (-theta, -x).
  CHECK(law.y_coord(-0.2, 0.0) ==
        doctest::Approx(-law.y_coord(0.2, 0.0)).epsilon(1e-14));
  // Unit slope in x.
  CHECK(law.y_coord(0.2, 1.5) - law.y_coord(0.2, 0.0) ==
        doctest::Approx(1.5).epsilon(1e-13));
  // Continuous across the theta switching angle.
  const double jump =
      law.y_coord(0.3 + 1e-9, 1.0) - law.y_coord(0.3 - 1e-9, 1.0);
  CHECK(std::abs(jump) < 1e-6);
}

TEST_CASE("region bookkeeping") {
  const MatchingLaw law = make_law();
  CHECK(law.region_ids(0.0, 0.0).theta_inner);
  CHECK(law.region_ids(0.29, 0.0).theta_inner);
  CHECK_FALSE(law.region_ids(0.31, 0.0).theta_inner);
  CHECK_FALSE(law.region_ids(-0.31, 0.0).theta_inner);
  CHECK(law.region_ids(0.0, 0.0).y_inner);
  CHECK_FALSE(law.region_ids(0.0, 20.0).y_inner);
  // Symmetric rule: large negative y is also outer.
  CHECK_FALSE(law.region_ids(0.0, -20.0).y_inner);
}

TEST_CASE("synthesized metric at the origin") {
  const MatchingLaw law = make_law();
  const Mat2 g = law.g_hat(0.0, 0.0);
  CHECK(g(0, 0) == doctest::Approx(0.92595229619081465).epsilon(1e-14));
  CHECK(g(0, 1) == doctest::Approx(0.14542730299667034).epsilon(1e-14));
  CHECK(g(1, 0) == g(0, 1));
  CHECK(g(1, 1) == doctest::Approx(0.027601730103806225).epsilon(1e-14));
  CHECK(g.determinant() ==
        doctest::Approx(0.0044087849115731458).epsilon(1e-12));
  // Matches the design targets to the quoted precision.
  CHECK(std::abs(g(0, 0) - 0.926) < 5e-4);
  // Positive definite.
  CHECK(g(0, 0) > 0.0);
  CHECK(g.determinant() > 0.0);
}

TEST_CASE("synthesized metric away from the origin") {
  const MatchingLaw law = make_law();
  const Mat2 g = law.g_hat(0.5, 3.0);
  CHECK(g(0, 0) == doctest::Approx(886.77184924741005).epsilon(1e-12));
  CHECK(g(0, 1) == doctest::Approx(5.2184899782135119).epsilon(1e-12));
  CHECK(g(1, 1) == doctest::Approx(0.054072917373627849).epsilon(1e-12));
  // Even under the reflection (theta, x) -> (-theta, -x).
  const Mat2 gr = law.g_hat(-0.5, -3.0);
  CHECK((gr - g).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS((void)law.g_hat(1.5708, 0.0), GeometryError);
}

TEST_CASE("metric positive definite over the working range") {
  const MatchingLaw law = make_law();
  for (double th = -1.2; th <= 1.2 + 1e-9; th += 0.02) {
    for (double y = -15.0; y <= 15.0 + 1e-9; y += 1.5) {
      const double x = y - law.y_coord(th, 0.0);
      if (!clear_of_bands(law, th, x)) continue;
      const Mat2 g = law.g_hat(th, x);
      CHECK(g(0, 0) > 0.0);
      CHECK(g.determinant() > 0.0);
    }
  }
}

TEST_CASE("closed-form metric agrees with the quadrature form") {
  const MatchingLaw law = make_law();
  for (double th : {0.0, 0.12, -0.22, 0.45, -0.65, 0.9, 1.15}) {
    for (double x : {-9.0, 0.0, 4.0, 11.0}) {
      if (!clear_of_bands(law, th, x)) continue;
      const double gap =
          std::abs(law.g_hat11_quadrature(th, x) - law.g_hat(th, x)(0, 0));
      CHECK(gap < 1e-8);
    }
  }
}

TEST_CASE("metric transport equation residual") {
  const MatchingLaw law = make_law();
  double worst = 0.0;
  for (double th = -1.15; th <= 1.15 + 1e-9; th += 0.115) {
    for (double x : {-14.0, -6.0, 0.0, 6.0, 14.0}) {
      if (!clear_of_bands(law, th, x)) continue;
      worst = std::max(worst, std::abs(law.g_hat_pde_residual(th, x)));
    }
  }
  CHECK(worst < 1e-4);
  // Reflection parity of the residual field.
  CHECK(law.g_hat_pde_residual(0.4, 2.0) ==
        doctest::Approx(-law.g_hat_pde_residual(-0.4, -2.0)).epsilon(1e-6));
  // Stencils inside a switching band are rejected.
  CHECK_THROWS_AS((void)law.g_hat_pde_residual(0.3, 0.0), GeometryError);
  CHECK_THROWS_AS((void)law.g_hat_pde_residual(0.2995, 0.0), GeometryError);
}

TEST_CASE("synthesized potential") {
  const MatchingLaw law = make_law();
  CHECK(law.v_hat(0.0, 0.0) == 0.0);
  CHECK(law.v_hat(0.2, 0.0) ==
        doctest::Approx(0.019214444466187575).epsilon(1e-14));
  CHECK(law.v_hat(0.5, 3.0) ==
        doctest::Approx(1360.9223957173003).epsilon(1e-12));
  // Even under the reflection.
  CHECK(law.v_hat(-0.5, -3.0) ==
        doctest::Approx(law.v_hat(0.5, 3.0)).epsilon(1e-13));
  // Strict local minimum at the origin.
  for (int k = 0; k < 16; ++k) {
    const double a = 2.0 * M_PI * k / 16.0;
    CHECK(law.v_hat(0.05 * std::cos(a), 0.05 * std::sin(a)) > 0.0);
  }
}

TEST_CASE("potential gradient matches finite differences") {
  const MatchingLaw law = make_law();
  const Vec2 g = law.v_hat_grad(0.5, 3.0);
  CHECK(g(0) == doctest::Approx(11105.876695820383).epsilon(1e-12));
  CHECK(g(1) == doctest::Approx(63.859358599523631).epsilon(1e-12));
  const double eps = 1e-6;
  for (auto [th, x] : {std::pair{0.15, 0.4}, {0.5, 3.0}, {-0.8, -2.0}}) {
    const Vec2 gr = law.v_hat_grad(th, x);
    const double fd_th =
        (law.v_hat(th + eps, x) - law.v_hat(th - eps, x)) / (2.0 * eps);
    const double fd_x =
        (law.v_hat(th, x + eps) - law.v_hat(th, x - eps)) / (2.0 * eps);
    CHECK(gr(0) == doctest::Approx(fd_th).epsilon(1e-5));
    CHECK(gr(1) == doctest::Approx(fd_x).epsilon(1e-5));
  }
}

TEST_CASE("potential transport equation residual") {
  const MatchingLaw law = make_law();
  double worst = 0.0;
  for (double th = -1.15; th <= 1.15 + 1e-9; th += 0.115) {
    for (double x : {-14.0, -6.0, 0.0, 6.0, 14.0}) {
      if (!clear_of_bands(law, th, x)) continue;
      worst = std::max(worst, std::abs(law.v_hat_pde_residual(th, x)));
    }
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("dissipation vector") {
  const MatchingLaw law = make_law();
  const Vec2 c = law.c_hat(State{0.0, 0.0, 1.0, 0.0});
  CHECK(c(0) == doctest::Approx(5.98808).epsilon(1e-12));
  CHECK(c(1) == doctest::Approx(-25.16).epsilon(1e-12));
  // Zero at rest, odd in the velocities.
  CHECK(law.c_hat(State{0.4, 2.0, 0.0, 0.0}).norm() == 0.0);
  const Vec2 cp = law.c_hat(State{0.4, 2.0, 0.3, -0.7});
  const Vec2 cm = law.c_hat(State{0.4, 2.0, -0.3, 0.7});
  CHECK((cp + cm).norm() < 1e-12);
  // Region-local velocity combination: the outer-region branch differs from
  // the global-constant variant.
  DesignParams gp;
  gp.region_local_dissipation = false;
  const MatchingLaw global_law{gp};
  const State outer{0.5, 0.0, 0.3, -0.7};
  CHECK(law.c_hat(outer)(1) != doctest::Approx(global_law.c_hat(outer)(1)));
  // Both variants coincide in the inner region.
  const State inner{0.1, 0.0, 0.3, -0.7};
  CHECK(law.c_hat(inner)(1) ==
        doctest::Approx(global_law.c_hat(inner)(1)).epsilon(1e-13));
}

TEST_CASE("connection symbols") {
  const MatchingLaw law = make_law();
  const auto at_origin = law.christoffel_hat(0.0, 0.0);
  CHECK(at_origin[0].norm() < 1e-9);
  CHECK(at_origin[1].norm() < 1e-9);
  CHECK(at_origin[0].norm() + at_origin[1].norm() <= 10.0);

  const auto g = law.christoffel_hat(0.45, 2.0);
  // Symmetric in the lower indices.
  CHECK(g[0](0, 1) == doctest::Approx(g[0](1, 0)).epsilon(1e-12));
  CHECK(g[1](0, 1) == doctest::Approx(g[1](1, 0)).epsilon(1e-12));

  // Levi-Civita property: the covariant derivative of the metric vanishes.
  const double eps = 1e-6;
  const double coord[2] = {0.45, 2.0};
  Mat2 dg[2];
  for (int k = 0; k < 2; ++k) {
    double lo[2] = {coord[0], coord[1]}, hi[2] = {coord[0], coord[1]};
    hi[k] += eps;
    lo[k] -= eps;
    dg[k] = (law.g_hat(hi[0], hi[1]) - law.g_hat(lo[0], lo[1])) / (2.0 * eps);
  }
  const Mat2 gm = law.g_hat(coord[0], coord[1]);
  for (int k = 0; k < 2; ++k)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double compat = dg[k](i, j);
        for (int m = 0; m < 2; ++m)
          compat -= g[m](k, i) * gm(m, j) + g[m](k, j) * gm(i, m);
        CHECK(std::abs(compat) < 1e-3);
      }
}

TEST_CASE("control force") {
  const MatchingLaw law = make_law();
  CHECK(law.control_force(State{0, 0, 0, 0}) == 0.0);
  double res = 0.0;
  const double u = law.control_force(State{0.3, 1.0, 0.2, -0.1}, &res);
  CHECK(u == doctest::Approx(16.684233983664317).epsilon(1e-12));
  CHECK(std::abs(res) < 1e-12);
  // Odd under the full state reflection.
  const State s{0.37, -1.1, 0.6, 0.4};
  const State r{-0.37, 1.1, -0.6, -0.4};
  CHECK(law.control_force(r) ==
        doctest::Approx(-law.control_force(s)).epsilon(1e-10));
  CHECK_THROWS_AS((void)law.control_force(State{1.6, 0, 0, 0}), GeometryError);
}

TEST_CASE("actuation constraint holds over random states") {
  const MatchingLaw law = make_law();
  std::mt19937 rng(20260813);
  std::uniform_real_distribution<double> dth(-1.2, 1.2);
  std::uniform_real_distribution<double> dx(-12.0, 12.0);
  std::uniform_real_distribution<double> dv(-2.0, 2.0);
  double worst = 0.0;
  int evaluated = 0;
  for (int i = 0; i < 1000; ++i) {
    const State s{dth(rng), dx(rng), dv(rng), dv(rng)};
    double res = 0.0;
    try {
      (void)law.control_force(s, &res);
    } catch (const GeometryError&) {
      continue;  // metric indefinite outside the verified region
    }
    ++evaluated;
    worst = std::max(worst, std::abs(res));
  }
  CHECK(evaluated > 900);
  CHECK(worst < 1e-9);
}

TEST_CASE("energy function and its rate") {
  const MatchingLaw law = make_law();
  CHECK(law.lyapunov(State{0, 0, 0, 0}) == 0.0);
  CHECK(law.lyapunov_rate(State{0, 0, 0, 0}) == 0.0);
  CHECK(law.lyapunov(State{0.4, 0, 0, 0}) ==
        doctest::Approx(355.55879007503381).epsilon(1e-12));
  CHECK(law.lyapunov_rate(State{0.4, 0.1, -0.2, 0.3}) ==
        doctest::Approx(-56.262868436831873).epsilon(1e-12));

  // Positive away from the origin, rate nonpositive everywhere it is defined.
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dth(-1.2, 1.2);
  std::uniform_real_distribution<double> dx(-12.0, 12.0);
  std::uniform_real_distribution<double> dv(-2.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const State s{dth(rng), dx(rng), dv(rng), dv(rng)};
    try {
      CHECK(law.lyapunov(s) > 0.0);
      CHECK(law.lyapunov_rate(s) <= 1e-10);
    } catch (const GeometryError&) {
      // outside the positive-definite region
    }
  }
}
