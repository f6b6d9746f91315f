#include "vrei/quench.hpp"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "vrei/asymptotics.hpp"
#include "vrei/entanglement.hpp"
#include "vrei/errors.hpp"
#include "vrei/parallel.hpp"
#include "vrei/quadrature.hpp"

namespace vrei {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFrequencyStep = 0.1;

struct ModeTerms {
  double u_abs_sq;
  std::complex<double> u_conj_v;
};

// With phi = omega t: u = cos phi + i (U^2 - V^2) sin phi and v = 2 i U V sin phi.
ModeTerms mode_terms(const ModeAmplitudes& m, double t) {
  const double phi = m.energy * t;
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double uv = m.uv();
  const double diff = 2.0 * m.u_sq() - 1.0;
  return {1.0 - 4.0 * uv * uv * s * s, {2.0 * uv * diff * s * s, -2.0 * uv * s * c}};
}

}  // namespace

ModeEvolution evolve_mode(const ModeAmplitudes& mode, double t) {
  const std::complex<double> plus = std::polar(1.0, mode.energy * t);
  const std::complex<double> minus = std::conj(plus);
  const double u2 = mode.u_sq();
  const double v2 = mode.v * mode.v;
  return {u2 * plus + v2 * minus, mode.uv() * (plus - minus)};
}

ModeEvolution evolve_mode(double k, double t, const ModelParams& params) {
  return evolve_mode(bogoliubov_amplitudes(k, params), t);
}

TimeCorrelators time_dependent_correlators(const Chain& chain, int r_max, double t, double tol) {
  if (r_max < 0) throw DomainError("r_max must be >= 0");
  if (!(t >= 0.0)) throw DomainError("time must be >= 0");
  const auto n = static_cast<Eigen::Index>(r_max + 1);
  auto integrand = [&](double k) {
    const ModeTerms m = mode_terms(chain.amplitudes(k), t);
    Eigen::ArrayXd out(3 * n);
    for (Eigen::Index r = 0; r < n; ++r) {
      const double c = std::cos(k * static_cast<double>(r)) / kPi;
      const double s = std::sin(k * static_cast<double>(r)) / kPi;
      out[r] = m.u_abs_sq * c;
      out[n + r] = m.u_conj_v.real() * s;
      out[2 * n + r] = m.u_conj_v.imag() * s;
    }
    return out;
  };
  const auto result = integrate_brillouin(integrand, r_max, chain.params().coordination(), tol);
  TimeCorrelators out;
  out.time = t;
  out.alpha_r.resize(static_cast<std::size_t>(n));
  out.beta_r.resize(static_cast<std::size_t>(n));
  for (Eigen::Index r = 0; r < n; ++r) {
    out.alpha_r[r] = result.value[r];
    out.beta_r[r] = r == 0 ? 0.0 : std::complex<double>(result.value[n + r], result.value[2 * n + r]);
  }
  return out;
}

std::pair<double, std::complex<double>> time_dependent_correlators(int r, double t,
                                                                   const ModelParams& params,
                                                                   double tol) {
  if (r < 0) throw DomainError("r must be >= 0");
  const TimeCorrelators c = time_dependent_correlators(Chain(params), r, t, tol);
  return {c.alpha_r.back(), c.beta_r.back()};
}

TimeCorrelators finite_time_correlators(const FiniteChainSpec& spec, int r_max, double t) {
  if (r_max < 0 || r_max >= spec.sites() / 2) throw DomainError("r_max must lie in [0, N/2)");
  const Chain chain(spec.params());
  TimeCorrelators out;
  out.time = t;
  out.alpha_r.assign(static_cast<std::size_t>(r_max + 1), 0.0);
  out.beta_r.assign(static_cast<std::size_t>(r_max + 1), 0.0);
  const double w = 2.0 / spec.sites();
  for (double k : spec.positive_momenta()) {
    const ModeTerms m = mode_terms(chain.amplitudes(k), t);
    for (int r = 0; r <= r_max; ++r) {
      out.alpha_r[r] += w * m.u_abs_sq * std::cos(k * r);
      out.beta_r[r] += w * m.u_conj_v * std::sin(k * r);
    }
  }
  out.beta_r[0] = 0.0;
  return out;
}

double quench_entropy(const TimeCorrelators& c, int block_size) {
  if (block_size < 1 || static_cast<std::size_t>(block_size) > c.alpha_r.size()) {
    throw DomainError("block size exceeds the available correlator range");
  }
  return block_entropy(assemble_correlation_matrix<std::complex<double>>(
      std::span<const double>(c.alpha_r), std::span<const std::complex<double>>(c.beta_r),
      block_size));
}

QuenchConfig::QuenchConfig(const ModelParams& params, std::vector<double> time_grid, double t0,
                           double window)
    : params_(params), time_grid_(std::move(time_grid)), t0_(t0), window_(window) {
  if (!(t0 >= 0.0)) throw DomainError("t0 must be >= 0");
  if (!(window > 0.0)) throw DomainError("averaging window must be > 0");
  if (!time_grid_.empty() && !(time_grid_.front() >= 0.0)) throw DomainError("times must be >= 0");
  if (!std::is_sorted(time_grid_.begin(), time_grid_.end())) {
    throw DomainError("time grid must be sorted ascending");
  }
}

double trapezoid_mean(std::span<const double> times, std::span<const double> values, double t0,
                      double window) {
  if (times.size() != values.size()) throw DomainError("times and values differ in length");
  const double t1 = t0 + window;
  const double slack = 1e-12 * std::max(1.0, t1);
  if (times.size() < 2 || times.front() > t0 + slack || times.back() < t1 - slack) {
    throw DomainError("window [t0, t0 + T] not covered by the time grid");
  }
  auto at = [&](double t) {
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t i = static_cast<std::size_t>(std::distance(times.begin(), it));
    i = std::clamp<std::size_t>(i, 1, times.size() - 1);
    const double span = times[i] - times[i - 1];
    if (span <= 0.0) return values[i];
    const double w = std::clamp((t - times[i - 1]) / span, 0.0, 1.0);
    return values[i - 1] + w * (values[i] - values[i - 1]);
  };
  double integral = 0.0;
  double prev_t = t0;
  double prev_v = at(t0);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] <= t0 || times[i] >= t1) continue;
    integral += 0.5 * (prev_v + values[i]) * (times[i] - prev_t);
    prev_t = times[i];
    prev_v = values[i];
  }
  integral += 0.5 * (prev_v + at(t1)) * (t1 - prev_t);
  return integral / window;
}

std::optional<std::size_t> detect_onset(std::span<const double> values, std::size_t samples,
                                        double rel) {
  if (samples < 2 || values.size() < samples) return std::nullopt;
  for (std::size_t end = samples - 1; end < values.size(); ++end) {
    const auto first = values.begin() + static_cast<std::ptrdiff_t>(end + 1 - samples);
    const auto last = values.begin() + static_cast<std::ptrdiff_t>(end + 1);
    const double mean = std::accumulate(first, last, 0.0) / static_cast<double>(samples);
    double var = 0.0;
    for (auto it = first; it != last; ++it) var += (*it - mean) * (*it - mean);
    const double sd = std::sqrt(var / static_cast<double>(samples));
    if (mean > 0.0 && sd < rel * mean) return end;
  }
  return std::nullopt;
}

double max_mode_frequency(const Chain& chain) {
  constexpr int kSamples = 4096;
  double best = 0.0;
  for (int i = 1; i <= kSamples; ++i) {
    best = std::max(best, chain.dispersion(kPi * i / kSamples));
  }
  // omega <= 2 (|h|/2 + sum J_r) bounds any undersampled peak
  return std::min(1.02 * best, std::abs(chain.params().field()) + 2.0);
}

double default_time_step(const Chain& chain) {
  const double w = max_mode_frequency(chain);
  return w > 0.0 ? kFrequencyStep / w : kFrequencyStep;
}

namespace {

std::vector<double> entropy_series(const Chain& chain, std::span<const double> times, int block_size,
                                   double tol) {
  return parallel_map(times.size(), [&](std::size_t i) {
    return quench_entropy(time_dependent_correlators(chain, block_size - 1, times[i], tol),
                          block_size);
  });
}

}  // namespace

QuenchTrajectory entropy_trajectory(const QuenchConfig& config, int block_size, double tol) {
  if (block_size < 1) throw DomainError("block size must be >= 1");
  const Chain chain(config.params());
  QuenchTrajectory out;
  out.times = config.time_grid();
  out.entropies = entropy_series(chain, out.times, block_size, tol);
  out.t0 = config.t0();
  out.window = config.window();
  out.mean = trapezoid_mean(out.times, out.entropies, out.t0, out.window);
  if (block_size == 1) out.eps0_bar = epsilon0_bar_analytic(config.params()).quadrature;
  return out;
}

QuenchRun run_quench(const ModelParams& params, int block_size, double tol,
                     const QuenchSchedule& schedule) {
  if (block_size < 1) throw DomainError("block size must be >= 1");
  const Chain chain(params);
  QuenchRun run;
  run.time_step = default_time_step(chain);
  const double dt = run.time_step;
  std::vector<double> times, values;
  std::optional<std::size_t> onset;
  auto extend = [&](std::size_t count) {
    std::vector<double> chunk(count);
    for (std::size_t i = 0; i < count; ++i) chunk[i] = static_cast<double>(times.size() + i) * dt;
    const std::vector<double> s = entropy_series(chain, chunk, block_size, tol);
    times.insert(times.end(), chunk.begin(), chunk.end());
    values.insert(values.end(), s.begin(), s.end());
  };
  while (!onset) {
    if (!times.empty() && times.back() > schedule.max_time) {
      throw ConvergenceError("no steady-state onset detected before t = " +
                             std::to_string(schedule.max_time));
    }
    extend(schedule.chunk);
    onset = detect_onset(values, schedule.onset_samples, schedule.onset_rel);
  }
  const double t0 = times[*onset];
  const double window = schedule.window_factor * t0;
  const double t_end = t0 + window;
  const auto needed = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9)) + 1;
  if (needed > times.size()) extend(needed - times.size());

  const QuenchConfig config(params, times, t0, window);
  run.trajectory.times = std::move(times);
  run.trajectory.entropies = std::move(values);
  run.trajectory.t0 = t0;
  run.trajectory.window = window;
  run.trajectory.mean =
      trapezoid_mean(run.trajectory.times, run.trajectory.entropies, t0, window);
  if (block_size == 1) run.trajectory.eps0_bar = epsilon0_bar_analytic(params).quadrature;
  run.s_static = block_entropy(block_size, chain, tol);

  double sum = 0.0, sum_sq = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < run.trajectory.times.size(); ++i) {
    const double t = run.trajectory.times[i];
    if (t < t0 || t > t_end) continue;
    const double s = run.trajectory.entropies[i];
    sum += s;
    sum_sq += s * s;
    ++count;
  }
  const double mean = sum / static_cast<double>(count);
  run.window_rel_std = std::sqrt(std::max(0.0, sum_sq / count - mean * mean)) / mean;
  return run;
}

Epsilon0Bar epsilon0_bar_analytic(const ModelParams& params, double tol) {
  const Chain chain(params);
  auto integrand = [&](double k) {
    const double u2 = chain.amplitudes(k).u_sq();
    Eigen::ArrayXd out(2);
    out << u2, u2 * u2;
    return out;
  };
  const auto result = integrate_brillouin(integrand, 0, params.coordination(), tol);
  Epsilon0Bar out;
  out.static_eps0 = result.value[0] / kPi - 0.5;
  out.quadrature = 0.5 - 2.0 / kPi * result.value[0] + 2.0 / kPi * result.value[1];
  const AsymptoticQuantities a = asymptotic_quantities(params.alpha(), params.coordination());
  const double c = a.c_value;
  out.closed_form = out.static_eps0 + (c * c + 0.5 * c + 1.5 - 1.0 / params.coordination());
  return out;
}

}  // namespace vrei
