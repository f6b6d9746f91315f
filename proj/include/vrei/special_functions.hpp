#pragma once

#include <complex>

namespace vrei {

// Riemann zeta for real s != 1. Borwein's accelerated Dirichlet-eta series on
// s > 0, functional equation on s <= 0.
double riemann_zeta(double s);

// Asymptotic expansion of Li_alpha(e^{ik}) around k = 0:
//   (-ik)^(alpha-1) Gamma(1-alpha) + sum_{n=0}^{n_terms} zeta(alpha-n) (ik)^n / n!
// Throws SingularityError for integer alpha (Gamma(1-alpha) has a pole).
std::complex<double> polylog_expansion(double alpha, double k, int n_terms);

struct IncompleteGammaEstimate {
  std::complex<double> value;
  // value * (-ik)^(alpha-1): the bracketed series, finite at k = 0
  std::complex<double> scaled;
  bool outside_small_kz = false;  // k Z > 0.3, truncation no longer trustworthy
};

// Small-kZ truncation of the lower incomplete gamma function
// gamma(1-alpha, -ikZ) to first or second order in k.
IncompleteGammaEstimate incomplete_gamma_small(double alpha, double k, int coordination, int order);

}  // namespace vrei
