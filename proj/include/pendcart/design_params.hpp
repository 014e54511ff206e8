#pragma once

namespace pendcart {

// Piecewise-constant design data for the matching law. The theta regions
// switch at |theta| = theta_L (inner/outer plateaus of sigma, mu, phi); the
// characteristic-coordinate regions switch at y_L (h, w).
//
// Defaults are the named preset "paper-2000".
struct DesignParams {
  double b = 0.238;  // shared with PlantParams
  double theta_L = 0.3;
  double y_L = 15.0;
  double sigma0 = -1.59;
  double sigma_inf = -0.05;
  double mu0 = 17.0;
  double mu_inf = 9.9;
  double w0 = 0.00296;
  double w_inf = 1.5;
  double phi0 = 1.48;
  double phi_inf = 0.75;
  double h0 = 0.0081;
  double h_inf = 0.03;

  // Region rule for h and w: symmetric |y| <= y_L (default) or the one-sided
  // y <= y_L form (config `switch_regions = as_printed`).
  bool symmetric_y_regions = true;

  // Velocity combination in the dissipation term: region-local sigma(theta),
  // mu(theta) (default; keeps the energy rate nonpositive everywhere) or the
  // global inner-region constants (config `dissipation_constants = global`).
  bool region_local_dissipation = true;

  static DesignParams preset_paper_2000() { return {}; }
};

}  // namespace pendcart
