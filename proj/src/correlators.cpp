#include "vrei/correlators.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "vrei/errors.hpp"
#include "vrei/fitting.hpp"
#include "vrei/quadrature.hpp"

namespace vrei {

namespace {

constexpr std::size_t kMinWindowPoints = 8;
constexpr double kMinDecayR2 = 0.98;

}  // namespace

CorrelatorTable correlator_table(const Chain& chain, std::span<const int> distances, double tol) {
  const std::size_t n = distances.size();
  int r_max = 0;
  for (int r : distances) {
    if (r < 0) throw DomainError("correlator distance must be >= 0");
    r_max = std::max(r_max, r);
  }
  const std::vector<double> rs(distances.begin(), distances.end());
  auto integrand = [&](double k) {
    const ModeAmplitudes m = chain.amplitudes(k);
    Eigen::ArrayXd out(2 * n);
    const double u2 = m.u_sq() / std::numbers::pi;
    const double uv = m.uv() / std::numbers::pi;
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = u2 * std::cos(k * rs[i]);
      out[n + i] = uv * std::sin(k * rs[i]);
    }
    return out;
  };

  CorrelatorTable table;
  table.distances.assign(distances.begin(), distances.end());
  table.coordination = chain.params().coordination();
  if (n == 0) {
    attach_lengths(table, chain.params().alpha(), chain.params().field());
    return table;
  }
  const auto result = integrate_brillouin(integrand, r_max, table.coordination, tol);
  table.alpha_r.resize(n);
  table.beta_r.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    table.alpha_r[i] = result.value[i];
    table.beta_r[i] = distances[i] == 0 ? 0.0 : result.value[n + i];
  }
  attach_lengths(table, chain.params().alpha(), chain.params().field());
  return table;
}

CorrelatorTable correlator_table(const Chain& chain, int r_max, double tol) {
  if (r_max < 0) throw DomainError("r_max must be >= 0");
  std::vector<int> rs(static_cast<std::size_t>(r_max) + 1);
  for (int r = 0; r <= r_max; ++r) rs[r] = r;
  return correlator_table(chain, rs, tol);
}

CorrelatorPair correlators(int r, const ModelParams& params, double tol) {
  const int distance = std::abs(r);
  const int single[] = {distance};
  const CorrelatorTable t = correlator_table(Chain(params), single, tol);
  // beta_r is odd in r, alpha_r even
  return {t.alpha_r[0], r < 0 ? -t.beta_r[0] : t.beta_r[0]};
}

void attach_lengths(CorrelatorTable& table, double alpha, double field) {
  table.alpha = alpha;
  table.delta_h = field - 2.0;
  const double dh = std::abs(table.delta_h);
  if (dh == 0.0) {
    table.xi_short = std::numeric_limits<double>::infinity();
    table.xi_long = std::numeric_limits<double>::infinity();
  } else {
    table.xi_short = 1.0 / dh;
    table.xi_long = std::pow(dh, -1.0 / (alpha - 1.0));
  }
}

DecayWindow default_window(const CorrelatorTable& table, DecayRegime regime) {
  const double z = table.coordination;
  switch (regime) {
    case DecayRegime::short_r: {
      double xi = table.xi_short;
      if (table.alpha < 2.0 && z > 1) xi = std::min(xi, table.xi_long);
      return {1.0, std::min(xi, z > 1 ? z : std::numeric_limits<double>::infinity()) / 10.0};
    }
    case DecayRegime::exp_tail:
      return {std::max(z, 2.0 * table.xi_short), 6.0 * table.xi_short};
    case DecayRegime::alg_tail:
      return {2.0 * table.xi_long, z};
  }
  return {};
}

DecayFit decay_fit(const CorrelatorTable& table, DecayRegime regime,
                   std::optional<DecayWindow> window) {
  DecayFit out;
  out.regime = regime;
  out.window = window.value_or(default_window(table, regime));
  std::vector<double> x, y;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double r = table.distances[i];
    const double b = std::abs(table.beta_r[i]);
    if (r < out.window.r_lo || r > out.window.r_hi || r <= 0.0 || !(b > 0.0)) continue;
    x.push_back(regime == DecayRegime::exp_tail ? r : std::log(r));
    y.push_back(std::log(b));
  }
  out.points = x.size();
  if (out.points < kMinWindowPoints) {
    throw FitError("insufficient window: " + std::to_string(out.points) +
                   " points in r in [" + std::to_string(out.window.r_lo) + ", " +
                   std::to_string(out.window.r_hi) + "]");
  }
  const LinearFit fit = linear_fit(x, y);
  out.r_squared = fit.r_squared;
  if (regime == DecayRegime::exp_tail) {
    out.value = -1.0 / fit.slope;
    out.fit_error = fit.slope_err / (fit.slope * fit.slope);
  } else {
    out.value = fit.slope;
    out.fit_error = fit.slope_err;
  }
  if (out.r_squared < kMinDecayR2) {
    throw FitError("decay fit quality too low: R^2 = " + std::to_string(out.r_squared));
  }
  return out;
}

}  // namespace vrei
