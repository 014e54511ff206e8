#include "pendcart/csv_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace pendcart {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

// Write-then-rename so readers never observe a partial file.
void atomic_write(const std::string& path, const std::string& body) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out << body;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace

const char* to_string(StabilityVerdict::Outcome o) {
  switch (o) {
    case StabilityVerdict::Outcome::converged: return "converged";
    case StabilityVerdict::Outcome::diverged: return "diverged";
    case StabilityVerdict::Outcome::horizon_reached: return "horizon-reached";
  }
  return "?";
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const std::vector<std::string>& comments) {
  std::string body;
  body.reserve(traj.samples.size() * 96 + 256);
  for (const std::string& c : comments) {
    body += "# ";
    body += c;
    body += '\n';
  }
  body += kTrajectoryCsvHeader;
  body += '\n';
  for (const Sample& s : traj.samples) {
    body += fmt(s.t);
    for (double v : {s.state.theta, s.state.x, s.state.theta_dot,
                     s.state.x_dot}) {
      body += ',';
      body += fmt(v);
    }
    if (traj.has_estimates) {
      for (double v : {s.x_hat.theta, s.x_hat.x, s.x_hat.theta_dot,
                       s.x_hat.x_dot}) {
        body += ',';
        body += fmt(v);
      }
    } else {
      body += ",,,,";
    }
    body += ',';
    body += fmt(s.u);
    body += ',';
    if (traj.has_energy) body += fmt(s.energy);
    body += '\n';
  }
  atomic_write(path, body);
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows) {
  std::string body = "tau,status,settling_time,peak_norm\n";
  for (const SweepRow& r : rows) {
    body += fmt(r.tau);
    body += ',';
    body += to_string(r.verdict.outcome);
    body += ',';
    if (r.verdict.outcome == StabilityVerdict::Outcome::converged) {
      body += fmt(r.verdict.settling_time);
    }
    body += ',';
    body += fmt(r.verdict.peak_norm);
    body += '\n';
  }
  atomic_write(path, body);
}

std::string default_out_dir() {
  const char* dir = std::getenv("PENDCART_OUT_DIR");
  return (dir != nullptr && *dir != '\0') ? dir : ".";
}

}  // namespace pendcart
