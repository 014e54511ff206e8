#pragma once

#include "pendcart/sim_engine.hpp"

#include <string>
#include <vector>

namespace pendcart {

// Exact trajectory CSV header. Estimator and energy columns are left empty
// when the run does not produce them.
inline constexpr const char* kTrajectoryCsvHeader =
    "t,theta,x,theta_dot,x_dot,theta_hat,x_hat,theta_dot_hat,x_dot_hat,u,H_hat";

// Write a trajectory CSV atomically (temp file + rename). `comments` are
// emitted verbatim as leading '#' lines before the header. Values carry 15
// significant digits. Throws std::runtime_error on I/O failure.
void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const std::vector<std::string>& comments = {});

// Sweep table: tau,status,settling_time,peak_norm (settling empty unless
// converged). Atomic like the trajectory writer.
void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows);

// Output directory: $PENDCART_OUT_DIR if set, else the current directory.
std::string default_out_dir();

const char* to_string(StabilityVerdict::Outcome o);

}  // namespace pendcart
