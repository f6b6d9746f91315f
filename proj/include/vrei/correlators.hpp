#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vrei/model.hpp"

namespace vrei {

// Two-point fermionic correlators alpha_r = <c_r c_0^dag>, beta_r = <c_r c_0>
// on a set of distances, together with the correlation lengths implied by the
// distance from the critical field h_c = 2.
struct CorrelatorTable {
  std::vector<int> distances;
  std::vector<double> alpha_r;
  std::vector<double> beta_r;
  int coordination = 1;
  double alpha = 0.0;
  double delta_h = 0.0;
  double xi_short = 0.0;  // |dh|^-1
  double xi_long = 0.0;   // |dh|^(-1/(alpha-1))

  std::size_t size() const noexcept { return distances.size(); }
};

struct CorrelatorPair {
  double alpha_r = 0.0;
  double beta_r = 0.0;
};

CorrelatorPair correlators(int r, const ModelParams& params, double tol);

// All distances share one adaptive integration with a vector integrand.
CorrelatorTable correlator_table(const Chain& chain, std::span<const int> distances, double tol);
CorrelatorTable correlator_table(const Chain& chain, int r_max, double tol);

// Fills delta_h, xi_short, xi_long from (alpha, h).
void attach_lengths(CorrelatorTable& table, double alpha, double field);

enum class DecayRegime {
  short_r,   // r << min(xi, Z): beta_r ~ r^-1
  exp_tail,  // Z < xi_S << r: beta_r ~ exp(-r / xi_S)
  alg_tail   // xi_L << r < Z: beta_r ~ r^-alpha
};

struct DecayWindow {
  double r_lo = 0.0;
  double r_hi = 0.0;
};

struct DecayFit {
  DecayRegime regime = DecayRegime::short_r;
  double value = 0.0;      // power for short_r / alg_tail, length for exp_tail
  double fit_error = 0.0;  // standard error of value
  double r_squared = 0.0;
  std::size_t points = 0;
  DecayWindow window;
};

// Default windows: short_r [1, min(xi, Z)/10]; exp_tail (max(Z, 2 xi_S), 6 xi_S);
// alg_tail (2 xi_L, Z). Throws FitError for fewer than 8 points in the window
// or R^2 < 0.98.
DecayWindow default_window(const CorrelatorTable& table, DecayRegime regime);
DecayFit decay_fit(const CorrelatorTable& table, DecayRegime regime,
                   std::optional<DecayWindow> window = std::nullopt);

}  // namespace vrei
