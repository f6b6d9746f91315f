#include "vrei/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vrei/correlators.hpp"
#include "vrei/errors.hpp"
#include "vrei/fitting.hpp"
#include "vrei/parallel.hpp"

namespace vrei {

namespace {

constexpr double kSpectrumSlack = 1e-8;
constexpr double kDifferenceFloor = 1e-9;
constexpr std::size_t kMinPowerLawSamples = 8;
constexpr int kGridPoints = 201;
constexpr int kRefinements = 40;

struct Trial {
  bool valid = false;
  double s_inf = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
  double rss = std::numeric_limits<double>::infinity();
  double r_squared = 0.0;
  std::size_t points = 0;
};

Trial evaluate_trial(std::span<const ScanSample> samples, double s_inf, double sign) {
  Trial t;
  t.s_inf = s_inf;
  std::vector<double> x, y;
  x.reserve(samples.size());
  y.reserve(samples.size());
  for (const auto& s : samples) {
    const double diff = sign * (s.entropy - s_inf);
    if (!(diff >= kDifferenceFloor)) continue;
    x.push_back(std::log(static_cast<double>(s.coordination)));
    y.push_back(std::log(diff));
  }
  if (x.size() < 3) return t;
  const LinearFit fit = linear_fit(x, y);
  t.gamma = -fit.slope;
  t.kappa = sign * std::exp(fit.intercept);
  t.r_squared = fit.r_squared;
  t.points = x.size();
  double rss = 0.0;
  for (const auto& s : samples) {
    const double model = s_inf + t.kappa * std::pow(static_cast<double>(s.coordination), -t.gamma);
    rss += (s.entropy - model) * (s.entropy - model);
  }
  t.rss = rss;
  t.valid = std::isfinite(rss);
  return t;
}

bool better(const Trial& a, const Trial& b) {
  if (!a.valid) return false;
  if (!b.valid) return true;
  const double scale = std::max(a.rss, b.rss);
  if (std::abs(a.rss - b.rss) <= 1e-12 * scale) {
    return std::abs(a.gamma - 1.0) < std::abs(b.gamma - 1.0);
  }
  return a.rss < b.rss;
}

}  // namespace

double binary_entropy_eps(double eps0) {
  if (!(std::abs(eps0) <= 0.5)) throw DomainError("binary entropy needs |eps0| <= 1/2");
  if (std::abs(eps0) == 0.5) return 0.0;
  const double lp = std::log1p(2.0 * eps0);
  const double lm = std::log1p(-2.0 * eps0);
  const double s = 1.0 - 0.5 * (lp + lm) / std::numbers::ln2 - eps0 * (lp - lm) / std::numbers::ln2;
  return std::max(0.0, s);
}

double spectrum_entropy(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    double mu = eigenvalues[i];
    if (mu < -kSpectrumSlack || mu > 1.0 + kSpectrumSlack || !std::isfinite(mu)) {
      throw SpectralError("correlation-matrix eigenvalue outside [0, 1]: " + std::to_string(mu));
    }
    mu = std::clamp(mu, 0.0, 1.0);
    if (mu > 0.0) s -= mu * std::log2(mu);
  }
  return s;
}

BlockCorrelationMatrix correlation_matrix(int block_size, const Chain& chain, double tol) {
  if (block_size < 1) throw DomainError("block size must be >= 1");
  const CorrelatorTable table = correlator_table(chain, block_size - 1, tol);
  return assemble_correlation_matrix<double>(table.alpha_r, table.beta_r, block_size);
}

BlockCorrelationMatrix correlation_matrix(int block_size, const ModelParams& params, double tol) {
  return correlation_matrix(block_size, Chain(params), tol);
}

double block_entropy(int block_size, const Chain& chain, double tol) {
  return block_entropy(correlation_matrix(block_size, chain, tol));
}

double block_entropy(int block_size, const ModelParams& params, double tol) {
  return block_entropy(block_size, Chain(params), tol);
}

PowerLawFit fit_power_law(std::span<const ScanSample> samples) {
  if (samples.size() < kMinPowerLawSamples) {
    throw FitError("power-law fit needs at least 8 samples, got " + std::to_string(samples.size()));
  }
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].coordination <= samples[i - 1].coordination) {
      throw FitError("power-law samples must have strictly increasing Z");
    }
  }
  const bool falling = samples.back().entropy < samples.front().entropy;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double step = samples[i].entropy - samples[i - 1].entropy;
    if (falling ? !(step < 0.0) : !(step > 0.0)) {
      throw FitError("power-law samples are not strictly monotone in Z");
    }
  }
  const double sign = falling ? 1.0 : -1.0;
  const double last = samples.back().entropy;
  const double spread = std::abs(samples.front().entropy - last);
  // S_inf lies beyond the last sample on the side the data is heading to
  const double far = last - sign * spread;
  double lo = std::min(far, last), hi = std::max(far, last);
  const double bracket_lo = lo, bracket_hi = hi;

  Trial best;
  for (int level = 0; level < kRefinements; ++level) {
    const double step = (hi - lo) / (kGridPoints - 1);
    int best_index = -1;
    Trial level_best;
    for (int j = 0; j < kGridPoints; ++j) {
      const Trial t = evaluate_trial(samples, lo + step * j, sign);
      if (better(t, level_best)) {
        level_best = t;
        best_index = j;
      }
    }
    if (best_index < 0) break;
    if (better(level_best, best)) best = level_best;
    const double center = lo + step * best_index;
    lo = std::max(bracket_lo, center - 2.0 * step);
    hi = std::min(bracket_hi, center + 2.0 * step);
    if (hi - lo <= 1e-15 * std::max(1.0, std::abs(center))) break;
  }
  if (!best.valid) throw FitError("power-law fit: no trial S_inf leaves three points above the floor");

  PowerLawFit fit;
  fit.s_inf = best.s_inf;
  fit.kappa = best.kappa;
  fit.gamma = best.gamma;
  fit.rss = best.rss;
  fit.r_squared = best.r_squared;
  fit.points = best.points;

  // Linearized covariance of (S_inf, kappa, gamma) at the optimum.
  const auto n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd jac(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double z = samples[i].coordination;
    const double p = std::pow(z, -fit.gamma);
    jac(i, 0) = 1.0;
    jac(i, 1) = p;
    jac(i, 2) = -fit.kappa * std::log(z) * p;
  }
  const double sigma2 = best.rss / static_cast<double>(n - 3);
  const Eigen::MatrixXd normal = jac.transpose() * jac;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
  if (lu.isInvertible()) {
    const Eigen::MatrixXd cov = sigma2 * lu.inverse();
    fit.s_inf_err = std::sqrt(std::max(0.0, cov(0, 0)));
    fit.kappa_err = std::sqrt(std::max(0.0, cov(1, 1)));
    fit.gamma_err = std::sqrt(std::max(0.0, cov(2, 2)));
  }
  return fit;
}

int default_fit_z_max(int block_size) { return block_size == 1 ? 10000 : 1000; }

ScanResult entropy_scan(int block_size, double alpha, const std::vector<int>& z_list, double field,
                        double tol, std::optional<int> fit_z_max) {
  if (block_size < 1) throw DomainError("block size must be >= 1");
  for (std::size_t i = 1; i < z_list.size(); ++i) {
    if (z_list[i] <= z_list[i - 1]) throw DomainError("entropy scan needs strictly increasing Z");
  }
  ScanResult out;
  out.block_size = block_size;
  out.alpha = alpha;
  out.field = field;
  out.fit_z_max = fit_z_max.value_or(default_fit_z_max(block_size));
  const auto entropies = parallel_map(z_list.size(), [&](std::size_t i) {
    return block_entropy(block_size, ModelParams(alpha, z_list[i], field, block_size), tol);
  });
  for (std::size_t i = 0; i < z_list.size(); ++i) out.samples.push_back({z_list[i], entropies[i]});

  std::vector<ScanSample> window;
  for (const auto& s : out.samples) {
    if (s.coordination < out.fit_z_max) window.push_back(s);
  }
  try {
    if (window.size() < kMinPowerLawSamples ||
        static_cast<double>(window.back().coordination) < 100.0 * window.front().coordination) {
      throw FitError("entropy scan fit window needs >= 8 points spanning >= 2 decades");
    }
    out.fit = fit_power_law(window);
  } catch (const FitError& e) {
    out.fit_failure = e.what();
  }
  return out;
}

QuadraticFit fit_gamma_alpha(std::span<const AlphaGamma> points) {
  if (points.size() < 5) throw FitError("quadratic gamma(alpha) fit needs at least 5 points");
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = points[i].alpha;
    design(i, 0) = 1.0;
    design(i, 1) = a;
    design(i, 2) = a * a;
    y[i] = points[i].gamma;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < 3) throw FitError("quadratic fit is rank deficient");
  const Eigen::VectorXd c = qr.solve(y);
  const Eigen::VectorXd residual = y - design * c;
  const double rss = residual.squaredNorm();
  const double tss = (y.array() - y.mean()).square().sum();

  QuadraticFit fit;
  fit.c0 = c[0];
  fit.c1 = c[1];
  fit.c2 = c[2];
  fit.points = points.size();
  fit.r_squared = tss > 0.0 ? 1.0 - rss / tss : 1.0;
  if (n > 3) {
    const Eigen::MatrixXd cov =
        (rss / static_cast<double>(n - 3)) * (design.transpose() * design).inverse();
    fit.c0_err = std::sqrt(std::max(0.0, cov(0, 0)));
    fit.c1_err = std::sqrt(std::max(0.0, cov(1, 1)));
    fit.c2_err = std::sqrt(std::max(0.0, cov(2, 2)));
  }
  return fit;
}

}  // namespace vrei
