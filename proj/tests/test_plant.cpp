#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <pendcart/plant.hpp>
#include <pendcart/sim_engine.hpp>

#include <cmath>

using namespace pendcart;

namespace {
// Total mechanical energy of the unforced cart-pendulum; conserved when u = 0.
double mech_energy(const PlantParams& p, const State& s) {
  const Vec2 v{s.theta_dot, s.x_dot};
  return 0.5 * v.dot(mass_matrix(p, s.theta) * v) + std::cos(s.theta);
}
}  // namespace

TEST_CASE("mass matrix structure") {
  PlantParams p;
  const Mat2 m0 = mass_matrix(p, 0.0);
  CHECK(m0(0, 0) == doctest::Approx(1.0));
  CHECK(m0(0, 1) == doctest::Approx(p.b));
  CHECK(m0(1, 0) == doctest::Approx(p.b));
  CHECK(m0(1, 1) == doctest::Approx(1.0));

  for (double th : {-1.2, -0.4, 0.3, 0.9, 1.5}) {
    const Mat2 m = mass_matrix(p, th);
    CHECK(m(0, 1) == m(1, 0));
    const double det = m.determinant();
    CHECK(det == doctest::Approx(1.0 - p.b * p.b * std::cos(th) * std::cos(th))
                     .epsilon(1e-14));
    CHECK(det > 0.0);
  }
}

TEST_CASE("velocity terms are quadratic and vanish at rest") {
  PlantParams p;
  CHECK(christoffel_quadratic(p, 0.4, 0.0).norm() == 0.0);
  const Vec2 c1 = christoffel_quadratic(p, 0.4, 0.7);
  const Vec2 c2 = christoffel_quadratic(p, 0.4, 1.4);
  CHECK(c2(0) == doctest::Approx(4.0 * c1(0)).epsilon(1e-13));
  CHECK(c2(1) == doctest::Approx(4.0 * c1(1)).epsilon(1e-13));
  // Odd in theta: reflecting the configuration flips both force components.
  const Vec2 cr = christoffel_quadratic(p, -0.4, 0.7);
  CHECK(cr(0) == doctest::Approx(-c1(0)).epsilon(1e-13));
  CHECK(cr(1) == doctest::Approx(-c1(1)).epsilon(1e-13));
}

TEST_CASE("forced acceleration at the upright equilibrium") {
  PlantParams p;
  const State origin{0, 0, 0, 0};
  CHECK(free_accel(p, origin).norm() == 0.0);
  // Unit force at the origin accelerates through the inverse mass matrix.
  const double k1 = 1.0 / (1.0 - p.b * p.b);
  const double k2 = -p.b * k1;
  const Vec2 a = forced_accel(p, origin, 1.0);
  CHECK(a(0) == doctest::Approx(k2).epsilon(1e-12));
  CHECK(a(1) == doctest::Approx(k1).epsilon(1e-12));
  CHECK(k1 == doctest::Approx(1.0600452).epsilon(1e-6));
  CHECK(k2 == doctest::Approx(-0.2522908).epsilon(1e-6));
}

TEST_CASE("linearization at the upright equilibrium") {
  PlantParams p;
  const LinearPlant lp = linearize(p);
  const double k1 = 1.0 / (1.0 - p.b * p.b);
  const double k2 = -p.b * k1;
  Mat4 a_expect = Mat4::Zero();
  a_expect(0, 2) = 1.0;
  a_expect(1, 3) = 1.0;
  a_expect(2, 0) = k1;
  a_expect(3, 0) = k2;
  CHECK((lp.A - a_expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(lp.B(0) == 0.0);
  CHECK(lp.B(1) == 0.0);
  CHECK(lp.B(2) == doctest::Approx(k2).epsilon(1e-12));
  CHECK(lp.B(3) == doctest::Approx(k1).epsilon(1e-12));

  // The linearization is the Jacobian of the forced dynamics at the origin.
  const double eps = 1e-7;
  for (int j = 0; j < 4; ++j) {
    Vec4 dp4 = Vec4::Zero();
    dp4(j) = eps;
    const State sp = State::from(dp4), sm = State::from(-dp4);
    const Vec2 ap = forced_accel(p, sp, 0.0), am = forced_accel(p, sm, 0.0);
    const Vec2 col = (ap - am) / (2.0 * eps);
    CHECK(col(0) == doctest::Approx(lp.A(2, j)).epsilon(1e-6));
    CHECK(col(1) == doctest::Approx(lp.A(3, j)).epsilon(1e-6));
  }
}

TEST_CASE("unforced dynamics conserve mechanical energy") {
  PlantParams p;
  auto field = [&](const Vec4& v) {
    const State s = State::from(v);
    const Vec2 a = free_accel(p, s);
    return Vec4{s.theta_dot, s.x_dot, a(0), a(1)};
  };
  Vec4 s = State{0.4, 0.0, 0.1, -0.2}.vec();
  const double e0 = mech_energy(p, State::from(s));
  const double dt = 1e-3;
  double max_drift = 0.0;
  for (int i = 0; i < 2000; ++i) {
    s = rk4_step(field, s, dt);
    max_drift =
        std::max(max_drift, std::abs(mech_energy(p, State::from(s)) - e0));
  }
  CHECK(max_drift < 1e-10);
}
