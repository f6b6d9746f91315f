#pragma once

#include <vector>

#include "vrei/model.hpp"

namespace vrei {

enum class GroupVelocityNote {
  bounded,         // alpha >= 2: the Z -> infinity group velocity stays finite
  diverges_small_k // 1 < alpha < 2: v_max ~ k^(alpha-2) -> infinity as Z -> infinity
};

struct AsymptoticQuantities {
  double velocity = 0.0;     // v_{alpha,Z}
  double crossover_k = 0.0;  // pi / Z
  double eta = 0.0;          // large-Z exponent of v
  double curvature = 0.0;    // R_{alpha,Z}: Re J~_k ~ 1 - k^2 R
  double g_value = 0.0;      // v / ((pi/Z) R)
  double c_value = 0.0;      // |U_{pi/Z}|^2 estimate
  double eps0_estimate = 0.0;
  GroupVelocityNote vmax_note = GroupVelocityNote::bounded;
  bool velocity_numeric = false;   // closed form singular, exact chain used
  bool curvature_numeric = false;
};

// Closed forms built from zeta and the Euler-Maclaurin tail of the Kac sum.
// Throw SingularityError at alpha = 2 (velocity) and alpha = 3 (curvature).
double closed_form_velocity(double alpha, int coordination);
double closed_form_curvature(double alpha, int coordination);

// Large-Z exponent of the quasi-particle velocity: 2 - alpha below 2, else 0.
double eta_theory(double alpha);

// C = [1 + (g / (1 + sqrt(1 + g^2)))^2]^-1
double c_from_g(double g);

// Limit of g_{pi/Z} as Z -> infinity, (6 - 2 alpha) / (pi (2 - alpha)).
double g_limit(double alpha);

AsymptoticQuantities asymptotic_quantities(double alpha, int coordination);

// Centered finite difference of the exact dispersion with step 1e-6 k and
// one Richardson extrapolation.
double dispersion_slope(const Chain& chain, double k);

// d log(omega) / d log(k) of the exact dispersion.
double local_loglog_slope(const Chain& chain, double k);

// Velocity from the exact critical dispersion, omega ~ 2 v k, at k = 1e-3 pi/Z.
double exact_velocity(const CouplingProfile& profile);

// Curvature from the exact deficit 1 - Re J~_k ~ R k^2, Richardson in k.
double exact_curvature(const CouplingProfile& profile);

struct EtaFit {
  double eta = 0.0;
  double eta_err = 0.0;
  double r_squared = 0.0;
  double rms_residual = 0.0;  // in decades of d(omega)/dk
  double probe_k = 0.0;
  std::vector<int> coordinations;
  std::vector<double> slopes;  // d(omega)/dk at probe_k, h = 2
};

// Least-squares slope of log10(d omega/dk) against log10 Z at the critical
// field. Throws FitError when the range spans less than a decade or when
// R^2 < 0.99 with residuals above 1e-3 decades.
EtaFit eta_exponent(double alpha, const std::vector<int>& z_range);

// Geometric grid of integers from lo to hi (inclusive, deduplicated).
std::vector<int> geometric_grid(int lo, int hi, int points);

}  // namespace vrei
