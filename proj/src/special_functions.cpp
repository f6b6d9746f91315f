#include "vrei/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vrei/errors.hpp"

namespace vrei {

namespace {

constexpr int kBorweinTerms = 40;

// d_k coefficients of Borwein's algorithm 2, normalized by d_n.
std::array<double, kBorweinTerms + 1> borwein_weights() {
  std::array<double, kBorweinTerms + 1> d{};
  const int n = kBorweinTerms;
  double term = 1.0 / n;  // i = 0 term of n * sum (n+i-1)! 4^i / ((n-i)! (2i)!) divided by n!
  double acc = term;
  d[0] = n * acc;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i - 1) * (2.0 * i));
    acc += term;
    d[i] = n * acc;
  }
  return d;
}

const std::array<double, kBorweinTerms + 1>& weights() {
  static const auto d = borwein_weights();
  return d;
}

// Dirichlet eta(s) = sum (-1)^(k-1) k^-s, valid for s > 0.
double dirichlet_eta(double s) {
  const auto& d = weights();
  const double dn = d[kBorweinTerms];
  double sum = 0.0;
  for (int k = kBorweinTerms - 1; k >= 0; --k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    sum += sign * (d[k] - dn) / std::pow(k + 1.0, s);
  }
  return -sum / dn;
}

double zeta_positive(double s) {
  if (s >= 60.0) return 1.0 + std::pow(2.0, -s);
  // 1 - 2^(1-s), accurate near s = 1
  const double denom = -std::expm1((1.0 - s) * std::numbers::ln2);
  return dirichlet_eta(s) / denom;
}

}  // namespace

double riemann_zeta(double s) {
  if (!std::isfinite(s)) throw DomainError("zeta argument must be finite");
  if (s == 1.0) throw DomainError("zeta has a pole at s = 1");
  if (s > 0.0) return zeta_positive(s);
  if (s == 0.0) return -0.5;
  // trivial zeros
  if (std::floor(s) == s && std::fmod(-s, 2.0) == 0.0) return 0.0;
  const double one_minus = 1.0 - s;
  return std::pow(2.0, s) * std::pow(std::numbers::pi, s - 1.0) *
         std::sin(0.5 * std::numbers::pi * s) * std::tgamma(one_minus) * zeta_positive(one_minus);
}

std::complex<double> polylog_expansion(double alpha, double k, int n_terms) {
  if (!(k > 0.0) || k > std::numbers::pi) throw DomainError("polylog expansion needs 0 < k <= pi");
  if (n_terms < 0) throw DomainError("n_terms must be non-negative");
  if (std::floor(alpha) == alpha) {
    throw SingularityError("Gamma(1-alpha) is singular for integer alpha = " +
                           std::to_string(alpha) + "; use exact summation");
  }
  using namespace std::complex_literals;
  const std::complex<double> minus_ik(0.0, -k);
  std::complex<double> out = std::pow(minus_ik, alpha - 1.0) * std::tgamma(1.0 - alpha);
  std::complex<double> ik_pow = 1.0;
  double factorial = 1.0;
  for (int n = 0; n <= n_terms; ++n) {
    if (n > 0) {
      ik_pow *= std::complex<double>(0.0, k);
      factorial *= n;
    }
    const double s = alpha - n;
    out += riemann_zeta(s) * ik_pow / factorial;
  }
  return out;
}

IncompleteGammaEstimate incomplete_gamma_small(double alpha, double k, int coordination,
                                               int order) {
  if (order != 1 && order != 2) throw DomainError("incomplete gamma order must be 1 or 2");
  if (coordination < 1) throw DomainError("coordination number must be >= 1");
  if (alpha == 1.0 || alpha == 2.0 || (order == 2 && alpha == 3.0)) {
    throw SingularityError("incomplete gamma truncation singular at alpha = " +
                           std::to_string(alpha));
  }
  const double z = coordination;
  IncompleteGammaEstimate out;
  out.outside_small_kz = k * z > 0.3;
  std::complex<double> bracket = std::pow(z, 1.0 - alpha) / (1.0 - alpha);
  bracket += std::complex<double>(0.0, k) * (std::pow(z, 2.0 - alpha) / (2.0 - alpha));
  if (order == 2) bracket -= k * k * std::pow(z, 3.0 - alpha) / (6.0 - 2.0 * alpha);
  out.scaled = bracket;
  if (k == 0.0) {
    out.value = std::complex<double>(std::numeric_limits<double>::infinity(), 0.0);
    return out;
  }
  out.value = std::pow(std::complex<double>(0.0, -k), 1.0 - alpha) * bracket;
  return out;
}

}  // namespace vrei
