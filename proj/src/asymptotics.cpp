#include "vrei/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vrei/errors.hpp"
#include "vrei/fitting.hpp"
#include "vrei/special_functions.hpp"

namespace vrei {

namespace {

constexpr double kFitMinR2 = 0.99;
constexpr double kFitResidualFloor = 1e-3;

double kac_estimate(double alpha, double z) {
  return riemann_zeta(alpha) + std::pow(z, 1.0 - alpha) / (1.0 - alpha);
}

}  // namespace

double closed_form_velocity(double alpha, int coordination) {
  if (alpha == 2.0) throw SingularityError("velocity closed form is singular at alpha = 2");
  const double z = coordination;
  return (riemann_zeta(alpha - 1.0) + std::pow(z, 2.0 - alpha) / (2.0 - alpha)) /
         kac_estimate(alpha, z);
}

double closed_form_curvature(double alpha, int coordination) {
  if (alpha == 3.0) throw SingularityError("curvature closed form is singular at alpha = 3");
  const double z = coordination;
  return (0.5 * riemann_zeta(alpha - 2.0) + std::pow(z, 3.0 - alpha) / (6.0 - 2.0 * alpha)) /
         kac_estimate(alpha, z);
}

double eta_theory(double alpha) { return alpha < 2.0 ? 2.0 - alpha : 0.0; }

double c_from_g(double g) {
  const double t = g / (1.0 + std::sqrt(1.0 + g * g));
  return 1.0 / (1.0 + t * t);
}

double g_limit(double alpha) {
  return (6.0 - 2.0 * alpha) / (std::numbers::pi * (2.0 - alpha));
}

double dispersion_slope(const Chain& chain, double k) {
  const double step = 1e-6 * k;
  auto centered = [&](double h) { return (chain.dispersion(k + h) - chain.dispersion(k - h)) / (2.0 * h); };
  const double coarse = centered(step);
  const double fine = centered(0.5 * step);
  return (4.0 * fine - coarse) / 3.0;
}

double local_loglog_slope(const Chain& chain, double k) {
  return k * dispersion_slope(chain, k) / chain.dispersion(k);
}

double exact_velocity(const CouplingProfile& profile) {
  auto shared = std::make_shared<const CouplingProfile>(profile);
  const Chain critical(ModelParams(profile.alpha(), profile.coordination(), 2.0), shared);
  const double k = 1e-3 * std::numbers::pi / profile.coordination();
  return 0.5 * dispersion_slope(critical, k);
}

double exact_curvature(const CouplingProfile& profile) {
  const double k = 1e-3 * std::numbers::pi / profile.coordination();
  const double coarse = profile.kernel(k).re_deficit / (k * k);
  const double fine = profile.kernel(0.5 * k).re_deficit / (0.25 * k * k);
  return (4.0 * fine - coarse) / 3.0;
}

AsymptoticQuantities asymptotic_quantities(double alpha, int coordination) {
  if (!(alpha > 1.0)) throw DomainError("asymptotics need alpha > 1");
  if (coordination < 1) throw DomainError("coordination number must be >= 1");
  AsymptoticQuantities q;
  q.crossover_k = std::numbers::pi / coordination;
  q.eta = eta_theory(alpha);
  q.vmax_note = alpha < 2.0 ? GroupVelocityNote::diverges_small_k : GroupVelocityNote::bounded;

  std::unique_ptr<CouplingProfile> profile;
  auto exact = [&]() -> const CouplingProfile& {
    if (!profile) profile = std::make_unique<CouplingProfile>(alpha, coordination);
    return *profile;
  };
  if (alpha == 2.0) {
    q.velocity = exact_velocity(exact());
    q.velocity_numeric = true;
  } else {
    q.velocity = closed_form_velocity(alpha, coordination);
  }
  if (alpha == 3.0) {
    q.curvature = exact_curvature(exact());
    q.curvature_numeric = true;
  } else {
    q.curvature = closed_form_curvature(alpha, coordination);
  }
  q.g_value = q.velocity / (q.crossover_k * q.curvature);
  q.c_value = c_from_g(q.g_value);
  q.eps0_estimate = 0.5 * q.c_value - 0.25 / coordination;
  return q;
}

EtaFit eta_exponent(double alpha, const std::vector<int>& z_range) {
  if (z_range.size() < 3) throw FitError("eta fit needs at least three coordination numbers");
  const auto [zmin, zmax] = std::minmax_element(z_range.begin(), z_range.end());
  if (static_cast<double>(*zmax) < 10.0 * *zmin) {
    throw FitError("eta fit range must span at least a decade");
  }
  EtaFit out;
  out.probe_k = 0.005 * std::numbers::pi / *zmax;
  out.coordinations = z_range;
  out.slopes.reserve(z_range.size());
  std::vector<double> log_z, log_slope;
  for (int z : z_range) {
    const Chain chain(ModelParams(alpha, z, 2.0));
    const double slope = dispersion_slope(chain, out.probe_k);
    out.slopes.push_back(slope);
    log_z.push_back(std::log10(static_cast<double>(z)));
    log_slope.push_back(std::log10(slope));
  }
  const LinearFit fit = linear_fit(log_z, log_slope);
  out.eta = fit.slope;
  out.eta_err = fit.slope_err;
  out.r_squared = fit.r_squared;
  out.rms_residual = std::sqrt(fit.rss / static_cast<double>(fit.n));
  if (out.r_squared < kFitMinR2 && out.rms_residual > kFitResidualFloor) {
    throw FitError("eta fit quality too low: R^2 = " + std::to_string(out.r_squared));
  }
  return out;
}

std::vector<int> geometric_grid(int lo, int hi, int points) {
  if (lo < 1 || hi < lo || points < 1) throw DomainError("invalid geometric grid bounds");
  std::vector<int> grid;
  if (points == 1) return {lo};
  const double ratio = std::log(static_cast<double>(hi) / lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const int v = static_cast<int>(std::lround(lo * std::exp(ratio * i)));
    if (grid.empty() || v > grid.back()) grid.push_back(std::min(v, hi));
  }
  if (grid.back() != hi) grid.back() = hi;
  return grid;
}

}  // namespace vrei
