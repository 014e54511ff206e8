#pragma once

#include "pendcart/digital_loop.hpp"
#include "pendcart/linear_control.hpp"
#include "pendcart/matching_law.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pendcart {

enum class Controller { matching, linear };
enum class Mode { continuous_full_state, sampled_observer };
enum class RunStatus { completed, diverged };

struct Scenario {
  Controller controller = Controller::matching;
  Mode mode = Mode::continuous_full_state;
  State initial{};
  // Initial observer state; defaults to the plant initial condition.
  std::optional<State> x_hat_initial;
  double horizon = 60.0;
  double dt = 1e-3;
  double tau = 0.0143;        // sampled mode only
  double divergence_bound = 50.0;
};

struct Sample {
  double t = 0;
  State state{};
  State x_hat{};  // meaningful only when Trajectory::has_estimates
  double u = 0;
  double energy = 0;  // meaningful only when Trajectory::has_energy
};

struct Trajectory {
  std::vector<Sample> samples;
  RunStatus status = RunStatus::completed;
  bool has_estimates = false;  // sampled mode records the held observer state
  bool has_energy = false;     // matching controller records H
  double dt_actual = 0;        // uniform record spacing
  double tau = 0;              // sampled mode
  std::array<double, 4> observer_moduli_used{};  // sampled mode
  // Largest positive energy rate observed (0 when the rate never goes
  // positive); matching controller only.
  double max_rate_violation = 0;
  // Geometry failures during sampled control evaluation (force fell back to
  // zero); timestamped messages.
  std::vector<std::string> events;
};

// Classic fixed-step RK4 on Vec4.
template <typename F>
Vec4 rk4_step(const F& f, const Vec4& s, double dt) {
  const Vec4 k1 = f(s);
  const Vec4 k2 = f(s + (0.5 * dt) * k1);
  const Vec4 k3 = f(s + (0.5 * dt) * k2);
  const Vec4 k4 = f(s + dt * k3);
  return s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Closed-loop run with the control evaluated from the full plant state inside
// every integrator stage. Deterministic: identical scenarios produce
// bit-identical trajectories.
Trajectory simulate(const MatchingLaw& law, const LinearGains& gains,
                    const Scenario& sc);

// Sampled-data run: at every sample read y_k = C x, hold u_k computed from
// the observer estimate, integrate the nonlinear plant with ceil(tau/dt) RK4
// substeps, then advance the observer. Records every substep.
Trajectory sampled_run(const MatchingLaw& law, const LinearGains& gains,
                       const DiscreteGains& dg, const Scenario& sc);

// Dispatch on scenario.mode.
Trajectory run_scenario(const MatchingLaw& law, const LinearGains& gains,
                        const DiscreteGains& dg, const Scenario& sc);

struct StabilityVerdict {
  enum class Outcome { converged, diverged, horizon_reached };
  Outcome outcome = Outcome::horizon_reached;
  // First time after which |state|_inf stays below the threshold; only
  // meaningful for converged runs.
  double settling_time = 0;
  double peak_norm = 0;
};

// Converged iff the run completed and |state|_inf < threshold over the final
// tenth of the horizon.
StabilityVerdict classify(const Trajectory& traj, double horizon,
                          double threshold = 0.02);

struct SweepRow {
  double tau = 0;
  StabilityVerdict verdict{};
};

// Sampled runs over a log-spaced tau grid (inclusive endpoints; steps == 1
// means the single point tau_min). Rows come back in grid order; runs execute
// concurrently.
std::vector<SweepRow> tau_sweep(const MatchingLaw& law, const LinearGains& gains,
                                const PlantParams& plant, const Mat42& G_d,
                                const Scenario& base, double tau_min,
                                double tau_max, int steps);

}  // namespace pendcart
