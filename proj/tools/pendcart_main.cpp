#include "pendcart/config.hpp"
#include "pendcart/csv_io.hpp"
#include "pendcart/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace pendcart;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitGeometry = 2;

struct CommonFlags {
  std::string preset;
  std::string config_path;
  std::string out_path;
  std::optional<double> tau, horizon, dt, theta0, x0;
  std::string controller, mode;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_mode) {
  cmd->add_option("--preset", f.preset, "experiment preset (fig2..fig7)");
  cmd->add_option("--config", f.config_path, "config file path");
  cmd->add_option("--out", f.out_path, "output CSV path");
  cmd->add_option("--tau", f.tau, "sample time (sampled mode)");
  cmd->add_option("--horizon", f.horizon, "simulation horizon, seconds");
  cmd->add_option("--dt", f.dt, "integrator step");
  cmd->add_option("--controller", f.controller, "matching | linear");
  if (with_mode) {
    cmd->add_option("--mode", f.mode,
                    "continuous-full-state | sampled-observer");
  }
  cmd->add_option("--theta0", f.theta0, "initial pendulum angle");
  cmd->add_option("--x0", f.x0, "initial cart position");
}

RunConfig build_config(const CommonFlags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) cfg = load_config_file(f.config_path);
  if (!f.preset.empty()) apply_preset(cfg, f.preset);
  Scenario& sc = cfg.scenario;
  if (f.tau) sc.tau = *f.tau;
  if (f.horizon) sc.horizon = *f.horizon;
  if (f.dt) sc.dt = *f.dt;
  if (f.theta0) sc.initial.theta = *f.theta0;
  if (f.x0) sc.initial.x = *f.x0;
  if (!f.controller.empty()) {
    if (f.controller == "matching") {
      sc.controller = Controller::matching;
    } else if (f.controller == "linear") {
      sc.controller = Controller::linear;
    } else {
      throw std::invalid_argument("--controller must be matching or linear");
    }
  }
  if (!f.mode.empty()) {
    if (f.mode == "continuous-full-state" || f.mode == "continuous") {
      sc.mode = Mode::continuous_full_state;
    } else if (f.mode == "sampled-observer" || f.mode == "sampled") {
      sc.mode = Mode::sampled_observer;
    } else {
      throw std::invalid_argument(
          "--mode must be continuous-full-state or sampled-observer");
    }
  }
  if (!f.out_path.empty()) cfg.out_path = f.out_path;
  return cfg;
}

std::string fmt_gains(const LinearGains& g) {
  std::ostringstream os;
  os << "gains: p1=" << g.p1 << " p2=" << g.p2 << " d1=" << g.d1
     << " d2=" << g.d2;
  return os.str();
}

int cmd_run(const CommonFlags& f) {
  const RunConfig cfg = build_config(f);
  const MatchingLaw law(cfg.design);
  const LinearGains gains = derive_gains(law);
  const Scenario& sc = cfg.scenario;
  const DiscreteGains dg = cfg.resolve_discrete();

  const Trajectory traj = run_scenario(law, gains, dg, sc);
  const StabilityVerdict verdict = classify(traj, sc.horizon);

  std::string out = cfg.out_path;
  if (out.empty()) {
    out = default_out_dir() + "/" +
          (cfg.preset.empty() ? "run" : cfg.preset) + ".csv";
  }
  std::vector<std::string> comments;
  if (!cfg.preset.empty()) comments.push_back("preset: " + cfg.preset);
  comments.push_back(std::string("controller: ") +
                     (sc.controller == Controller::matching ? "matching"
                                                            : "linear"));
  comments.push_back(std::string("mode: ") +
                     (sc.mode == Mode::continuous_full_state
                          ? "continuous-full-state"
                          : "sampled-observer"));
  comments.push_back(fmt_gains(gains));
  if (sc.mode == Mode::sampled_observer) {
    std::ostringstream os;
    os << "observer_moduli:";
    for (double m : traj.observer_moduli_used) os << ' ' << m;
    os << " tau: " << sc.tau;
    comments.push_back(os.str());
  }
  write_trajectory_csv(out, traj, comments);

  std::cout << "status: " << to_string(verdict.outcome) << "\n";
  if (verdict.outcome == StabilityVerdict::Outcome::converged) {
    std::cout << "settling_time: " << verdict.settling_time << "\n";
  }
  std::cout << "peak_norm: " << verdict.peak_norm << "\n";
  if (traj.has_energy && sc.mode == Mode::continuous_full_state) {
    std::cout << "max_rate_violation: " << traj.max_rate_violation << "\n";
  }
  std::cout << fmt_gains(gains) << "\n";
  if (sc.mode == Mode::sampled_observer) {
    std::cout << "observer_moduli:";
    for (double m : traj.observer_moduli_used) std::cout << ' ' << m;
    std::cout << "\n";
  }
  for (const std::string& e : traj.events) std::cout << "event: " << e << "\n";
  std::cout << "wrote: " << out << "\n";
  return kExitOk;
}

int cmd_verify(const CommonFlags& f) {
  const RunConfig cfg = build_config(f);
  const VerifyReport rep = run_verification(cfg.design);
  for (const VerifyItem& it : rep.items) {
    std::printf("%-28s %14.6e  (tol %.1e)  %s\n", it.name.c_str(), it.value,
                it.tolerance, it.pass ? "ok" : "EXCEEDED");
  }
  std::cout << (rep.all_pass ? "verification passed" : "verification FAILED")
            << "\n";
  return rep.all_pass ? kExitOk : 1;
}

int cmd_sweep(const CommonFlags& f, double tau_min, double tau_max, int steps) {
  RunConfig cfg = build_config(f);
  cfg.scenario.mode = Mode::sampled_observer;
  const MatchingLaw law(cfg.design);
  const LinearGains gains = derive_gains(law);

  const auto rows = tau_sweep(law, gains, cfg.plant, cfg.G_d, cfg.scenario,
                              tau_min, tau_max, steps);
  std::string out = cfg.out_path;
  if (out.empty()) out = default_out_dir() + "/sweep.csv";
  write_sweep_csv(out, rows);

  double largest_converged = -1.0;
  bool seen_nonconverged = false;
  bool non_monotone = false;
  for (const SweepRow& r : rows) {
    const bool conv = r.verdict.outcome == StabilityVerdict::Outcome::converged;
    if (conv) {
      largest_converged = r.tau;
      if (seen_nonconverged) non_monotone = true;
    } else {
      seen_nonconverged = true;
    }
    std::printf("tau=%-12g %s\n", r.tau, to_string(r.verdict.outcome));
  }
  if (largest_converged > 0) {
    std::cout << "largest_converged_tau: " << largest_converged << "\n";
  } else {
    std::cout << "largest_converged_tau: none\n";
  }
  if (non_monotone) {
    std::cout << "note: convergence pattern is not monotone in tau\n";
  }
  std::cout << "wrote: " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pendulum-cart matching-control toolkit"};
  app.require_subcommand(1);

  CommonFlags run_flags, verify_flags, sweep_flags;
  double tau_min = 0.001, tau_max = 0.1;
  int steps = 10;

  CLI::App* run = app.add_subcommand("run", "simulate one scenario");
  add_common(run, run_flags, true);
  CLI::App* verify =
      app.add_subcommand("verify", "check structural identities and residuals");
  add_common(verify, verify_flags, false);
  CLI::App* sweep =
      app.add_subcommand("sweep", "sample-time sweep of the digital loop");
  add_common(sweep, sweep_flags, false);
  sweep->add_option("--tau-min", tau_min, "smallest sample time");
  sweep->add_option("--tau-max", tau_max, "largest sample time");
  sweep->add_option("--steps", steps, "grid size (log-spaced)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return kExitConfig;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (verify->parsed()) return cmd_verify(verify_flags);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, tau_min, tau_max, steps);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const GeometryError& e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return kExitGeometry;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitGeometry;
  }
  return kExitOk;
}
