#include "pendcart/sim_engine.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <sstream>

namespace pendcart {

namespace {

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

// Energy of the plant state when the geometry admits it, NaN otherwise
// (diverging runs can leave the synthesized metric's domain).
double safe_energy(const MatchingLaw& law, const State& s) {
  try {
    return law.lyapunov(s);
  } catch (const GeometryError&) {
    return quiet_nan();
  }
}

}  // namespace

Trajectory simulate(const MatchingLaw& law, const LinearGains& gains,
                    const Scenario& sc) {
  const PlantParams plant{law.params().b};
  const bool matching = sc.controller == Controller::matching;
  const auto u_of = [&](const State& s) {
    return matching ? law.control_force(s) : linear_u(gains, s);
  };
  const auto field = [&](const Vec4& v) -> Vec4 {
    const State s = State::from(v);
    const Vec2 a = forced_accel(plant, s, u_of(s));
    return {s.theta_dot, s.x_dot, a[0], a[1]};
  };

  Trajectory traj;
  traj.has_energy = matching;
  traj.dt_actual = sc.dt;

  const long n = std::lround(sc.horizon / sc.dt);
  Vec4 v = sc.initial.vec();
  const auto record = [&](double t) {
    const State s = State::from(v);
    Sample smp;
    smp.t = t;
    smp.state = s;
    smp.u = u_of(s);
    if (matching) {
      smp.energy = safe_energy(law, s);
      if (std::isfinite(smp.energy)) {
        const double rate = law.lyapunov_rate(s);
        if (rate > traj.max_rate_violation) traj.max_rate_violation = rate;
      }
    }
    traj.samples.push_back(smp);
  };
  record(0.0);
  for (long k = 0; k < n; ++k) {
    v = rk4_step(field, v, sc.dt);
    if (State::from(v).inf_norm() > sc.divergence_bound) {
      traj.status = RunStatus::diverged;
      traj.samples.push_back(Sample{(k + 1) * sc.dt, State::from(v), {},
                                    traj.samples.back().u, quiet_nan()});
      return traj;
    }
    record((k + 1) * sc.dt);
  }
  return traj;
}

Trajectory sampled_run(const MatchingLaw& law, const LinearGains& gains,
                       const DiscreteGains& dg, const Scenario& sc) {
  const PlantParams plant{law.params().b};
  const bool matching = sc.controller == Controller::matching;
  const int nsub = std::max(1L, std::lround(std::ceil(sc.tau / sc.dt)));
  const double h = sc.tau / nsub;
  const long nsamp = std::lround(sc.horizon / sc.tau);

  Trajectory traj;
  traj.has_estimates = true;
  traj.has_energy = matching;
  traj.dt_actual = h;
  traj.tau = sc.tau;
  traj.observer_moduli_used = observer_moduli(dg);

  Vec4 v = sc.initial.vec();
  Vec4 x_hat = sc.x_hat_initial.value_or(sc.initial).vec();

  const auto record = [&](double t, double u) {
    Sample smp;
    smp.t = t;
    smp.state = State::from(v);
    smp.x_hat = State::from(x_hat);
    smp.u = u;
    if (matching) smp.energy = safe_energy(law, smp.state);
    traj.samples.push_back(smp);
  };

  for (long k = 0; k < nsamp; ++k) {
    const double tk = k * sc.tau;
    double u = 0.0;
    try {
      const State est = State::from(x_hat);
      u = matching ? law.control_force(est) : linear_u(gains, est);
      if (!std::isfinite(u)) throw GeometryError("non-finite control");
    } catch (const GeometryError& e) {
      std::ostringstream msg;
      msg << "t=" << tk << ": control fallback to 0 (" << e.what() << ")";
      traj.events.push_back(msg.str());
      u = 0.0;
    }
    if (k == 0) record(0.0, u);
    const Vec2 y = dg.C * v;
    const auto field = [&](const Vec4& w) -> Vec4 {
      const State s = State::from(w);
      const Vec2 a = forced_accel(plant, s, u);
      return {s.theta_dot, s.x_dot, a[0], a[1]};
    };
    for (int j = 0; j < nsub; ++j) {
      v = rk4_step(field, v, h);
      record(tk + (j + 1) * h, u);
      if (State::from(v).inf_norm() > sc.divergence_bound) {
        traj.status = RunStatus::diverged;
        return traj;
      }
    }
    x_hat = observer_step(dg, x_hat, y, u);
  }
  return traj;
}

Trajectory run_scenario(const MatchingLaw& law, const LinearGains& gains,
                        const DiscreteGains& dg, const Scenario& sc) {
  return sc.mode == Mode::continuous_full_state ? simulate(law, gains, sc)
                                                : sampled_run(law, gains, dg, sc);
}

StabilityVerdict classify(const Trajectory& traj, double horizon,
                          double threshold) {
  StabilityVerdict v;
  for (const Sample& s : traj.samples) {
    v.peak_norm = std::max(v.peak_norm, s.state.inf_norm());
  }
  if (traj.status == RunStatus::diverged) {
    v.outcome = StabilityVerdict::Outcome::diverged;
    return v;
  }
  const double window_start = 0.9 * horizon;
  bool settled_window = true;
  double last_above = -1.0;
  for (const Sample& s : traj.samples) {
    if (s.state.inf_norm() >= threshold) {
      last_above = s.t;
      if (s.t >= window_start) settled_window = false;
    }
  }
  if (settled_window) {
    v.outcome = StabilityVerdict::Outcome::converged;
    v.settling_time = last_above < 0.0 ? 0.0 : last_above;
  }
  return v;
}

std::vector<SweepRow> tau_sweep(const MatchingLaw& law, const LinearGains& gains,
                                const PlantParams& plant, const Mat42& G_d,
                                const Scenario& base, double tau_min,
                                double tau_max, int steps) {
  if (!(tau_min > 0.0) || tau_max < tau_min || steps < 1) {
    throw std::invalid_argument("tau_sweep: need 0 < tau_min <= tau_max, steps >= 1");
  }
  std::vector<double> grid;
  if (steps == 1) {
    grid.push_back(tau_min);
  } else {
    const double ratio = std::log(tau_max / tau_min);
    for (int i = 0; i < steps; ++i) {
      grid.push_back(tau_min * std::exp(ratio * i / (steps - 1)));
    }
  }
  const LinearPlant lp = linearize(plant);
  std::vector<std::future<SweepRow>> futures;
  futures.reserve(grid.size());
  for (double tau : grid) {
    futures.push_back(std::async(std::launch::async, [&, tau] {
      DiscreteGains dg;
      dg.tau = tau;
      const Discretization d = discretize(lp, tau);
      dg.A_d = d.A_d;
      dg.B_d = d.B_d;
      dg.C << 1, 0, 0, 0, 0, 1, 0, 0;
      dg.G_d = G_d;
      Scenario sc = base;
      sc.mode = Mode::sampled_observer;
      sc.tau = tau;
      const Trajectory traj = sampled_run(law, gains, dg, sc);
      return SweepRow{tau, classify(traj, sc.horizon)};
    }));
  }
  std::vector<SweepRow> rows;
  rows.reserve(futures.size());
  for (auto& f : futures) rows.push_back(f.get());
  return rows;
}

}  // namespace pendcart
