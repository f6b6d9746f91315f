#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "vrei/ed.hpp"
#include "vrei/model.hpp"

namespace vrei {

// Sudden quench from the h -> infinity product state |0...0> (the zero
// quasi-particle state) to the Hamiltonian at params.field(), critical by default.

struct ModeEvolution {
  std::complex<double> u;
  std::complex<double> v;
};

// u = U^2 e^{i w t} + V^2 e^{-i w t}, v = U V (e^{i w t} - e^{-i w t}).
ModeEvolution evolve_mode(const ModeAmplitudes& mode, double t);
ModeEvolution evolve_mode(double k, double t, const ModelParams& params);

struct TimeCorrelators {
  double time = 0.0;
  std::vector<double> alpha_r;                // (1/pi) int |u|^2 cos(kr)
  std::vector<std::complex<double>> beta_r;   // (1/pi) int u conj(v) sin(kr)
};

TimeCorrelators time_dependent_correlators(const Chain& chain, int r_max, double t, double tol);
std::pair<double, std::complex<double>> time_dependent_correlators(int r, double t,
                                                                   const ModelParams& params,
                                                                   double tol);

// Same quantities as (2/N) sums over the positive antiperiodic momenta.
TimeCorrelators finite_time_correlators(const FiniteChainSpec& spec, int r_max, double t);

double quench_entropy(const TimeCorrelators& c, int block_size);

class QuenchConfig {
 public:
  // Throws DomainError unless t0 >= 0, window > 0 and the grid is sorted with t >= 0.
  QuenchConfig(const ModelParams& params, std::vector<double> time_grid, double t0, double window);

  const ModelParams& params() const noexcept { return params_; }
  const std::vector<double>& time_grid() const noexcept { return time_grid_; }
  double t0() const noexcept { return t0_; }
  double window() const noexcept { return window_; }

 private:
  ModelParams params_;
  std::vector<double> time_grid_;
  double t0_;
  double window_;
};

struct QuenchTrajectory {
  std::vector<double> times;
  std::vector<double> entropies;
  double mean = 0.0;                 // (1/T) int_{t0}^{t0+T} S dt
  std::optional<double> eps0_bar;    // M = 1 only
  double t0 = 0.0;
  double window = 0.0;
};

// Trapezoidal average over [t0, t0 + T] with linear interpolation at the ends.
// Throws DomainError ("window ...") if the grid does not cover the interval.
double trapezoid_mean(std::span<const double> times, std::span<const double> values, double t0,
                      double window);

// Index of the first sample closing a run of `samples` values whose standard
// deviation is below rel * mean; empty if none.
std::optional<std::size_t> detect_onset(std::span<const double> values, std::size_t samples = 50,
                                        double rel = 0.05);

double max_mode_frequency(const Chain& chain);
// Uniform step with max_k omega_k * dt <= 0.1.
double default_time_step(const Chain& chain);

QuenchTrajectory entropy_trajectory(const QuenchConfig& config, int block_size, double tol);

struct QuenchSchedule {
  std::size_t onset_samples = 50;
  double onset_rel = 0.05;
  double window_factor = 10.0;
  double max_time = 2000.0;
  std::size_t chunk = 200;
};

struct QuenchRun {
  QuenchTrajectory trajectory;
  double time_step = 0.0;
  double s_static = 0.0;
  double window_rel_std = 0.0;  // std / mean of S on [t0, t0 + T]
};

// Grows a uniform grid until the onset is detected, then extends it to
// t0 + window_factor * t0. Throws ConvergenceError if no onset before max_time.
QuenchRun run_quench(const ModelParams& params, int block_size, double tol,
                     const QuenchSchedule& schedule = {});

struct Epsilon0Bar {
  double quadrature = 0.0;    // 1/2 - (2/pi) int U^2 + (2/pi) int U^4
  double static_eps0 = 0.0;   // (1/pi) int U^2 - 1/2
  double closed_form = 0.0;   // eps0_static + (C^2 + C/2 + 3/2 - 1/Z), diagnostic only
};

Epsilon0Bar epsilon0_bar_analytic(const ModelParams& params, double tol = 1e-12);

}  // namespace vrei
