#pragma once

#include "pendcart/digital_loop.hpp"
#include "pendcart/matching_law.hpp"

#include <string>
#include <vector>

namespace pendcart {

// One residual check: measured value against its tolerance.
struct VerifyItem {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<VerifyItem> items;
  bool all_pass = true;
  void add(const std::string& name, double value, double tolerance);
};

// Structural checks of the constructed law and discretization:
//   - identity residuals of the design functions (exact derivatives)
//   - transport-equation residuals of g_hat and v_hat on the verification
//     grid |theta| <= 1.2, |x| <= 20 minus 1e-3 switching bands
//   - closed form vs quadrature metric component
//   - positive definiteness of g_hat on the grid |theta| <= 1.2, |y| <= y_L
//   - plateau-jump relation of sigma
//   - reproduction of the reference discretization at tau = 0.0143
//   - observer spectral radius
VerifyReport run_verification(const DesignParams& dp);

// Reference four-digit discretization entries at tau = 0.0143 used by the
// verification and the acceptance gate.
Mat4 reference_A_d();
Vec4 reference_B_d();
Mat42 reference_G_d();

}  // namespace pendcart
