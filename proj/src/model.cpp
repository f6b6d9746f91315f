#include "vrei/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vrei/errors.hpp"

namespace vrei {

namespace {

// Exact sin/cos refresh interval of the rotation recurrence.
constexpr std::size_t kReseedInterval = 32;

// Below this both Bogoliubov components count as zero (closed gap).
constexpr double kDegenerateThreshold = 1e-14;

void check_alpha(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be finite and > 1, got " + std::to_string(alpha));
  }
}

void check_coordination(int coordination) {
  if (coordination < 1) {
    throw DomainError("coordination number must be >= 1, got " + std::to_string(coordination));
  }
}

}  // namespace

ModelParams::ModelParams(double alpha, int coordination, double field, int block_size)
    : alpha_(alpha), coordination_(coordination), field_(field), block_size_(block_size) {
  check_alpha(alpha);
  check_coordination(coordination);
  if (!std::isfinite(field)) throw DomainError("field must be finite");
  if (block_size < 1) {
    throw DomainError("block size must be >= 1, got " + std::to_string(block_size));
  }
}

ModelParams ModelParams::with_field(double field) const {
  return ModelParams(alpha_, coordination_, field, block_size_);
}

ModelParams ModelParams::with_coordination(int coordination) const {
  return ModelParams(alpha_, coordination, field_, block_size_);
}

ModelParams ModelParams::with_block_size(int block_size) const {
  return ModelParams(alpha_, coordination_, field_, block_size);
}

CouplingProfile::CouplingProfile(double alpha, int coordination) : alpha_(alpha) {
  check_alpha(alpha);
  check_coordination(coordination);
  couplings_.resize(static_cast<std::size_t>(coordination));
  for (int r = 1; r <= coordination; ++r) {
    couplings_[r - 1] = std::pow(static_cast<double>(r), -alpha);
  }
  // smallest terms first
  double sum = 0.0;
  for (auto it = couplings_.rbegin(); it != couplings_.rend(); ++it) sum += *it;
  kac_constant_ = sum;
  for (double& j : couplings_) j /= sum;
}

KernelValue CouplingProfile::kernel(double k) const {
  const double half = std::sin(0.5 * k);
  const double step_cm1 = -2.0 * half * half;  // cos k - 1
  const double step_sin = std::sin(k);
  const std::size_t n = couplings_.size();
  const double* coupling = couplings_.data();

  double deficit = 0.0;
  double im = 0.0;
  for (std::size_t start = 0; start < n; start += kReseedInterval) {
    const double kr = k * static_cast<double>(start + 1);
    const double hs = std::sin(0.5 * kr);
    double cm1 = -2.0 * hs * hs;  // cos(kr) - 1
    double s = std::sin(kr);
    const std::size_t end = std::min(n, start + kReseedInterval);
    for (std::size_t i = start; i < end; ++i) {
      deficit -= coupling[i] * cm1;
      im += coupling[i] * s;
      const double next_cm1 = cm1 + step_cm1 + cm1 * step_cm1 - s * step_sin;
      const double next_s = s + s * step_cm1 + step_sin + cm1 * step_sin;
      cm1 = next_cm1;
      s = next_s;
    }
  }
  return {deficit, im};
}

ModeAmplitudes amplitudes_from_kernel(double k, double field, const KernelValue& kernel) {
  ModeAmplitudes out;
  out.momentum = k;
  out.j_tilde = kernel.value();
  const double x = (0.5 * field - 1.0) + kernel.re_deficit;
  const double y = kernel.im;
  const double rho = std::hypot(x, y);
  out.energy = 2.0 * rho;

  // x + rho, rewritten for x < 0 to avoid cancellation
  const double u_raw = x >= 0.0 ? x + rho : (y * y) / (rho - x);
  const double v_raw = y;
  if (std::abs(u_raw) < kDegenerateThreshold && std::abs(v_raw) < kDegenerateThreshold) {
    // k -> 0+ limit along a linear gap closing: |U|^2 = |V|^2 = 1/2
    out.u = std::numbers::sqrt2 / 2.0;
    out.v = std::numbers::sqrt2 / 2.0;
    out.degenerate = true;
    return out;
  }
  const double norm = std::hypot(u_raw, v_raw);
  out.u = u_raw / norm;
  out.v = v_raw / norm;
  return out;
}

Chain::Chain(const ModelParams& params)
    : params_(params),
      profile_(std::make_shared<const CouplingProfile>(params.alpha(), params.coordination())) {}

Chain::Chain(const ModelParams& params, std::shared_ptr<const CouplingProfile> profile)
    : params_(params), profile_(std::move(profile)) {
  if (!profile_ || profile_->coordination() != params.coordination() ||
      profile_->alpha() != params.alpha()) {
    throw DomainError("coupling profile does not match model parameters");
  }
}

Chain Chain::at_field(double field) const { return Chain(params_.with_field(field), profile_); }

double Chain::dispersion(double k) const {
  const KernelValue kv = kernel(k);
  return 2.0 * std::hypot((0.5 * params_.field() - 1.0) + kv.re_deficit, kv.im);
}

ModeAmplitudes Chain::amplitudes(double k) const {
  return amplitudes_from_kernel(k, params_.field(), kernel(k));
}

double kac_normalization(double alpha, int coordination) {
  return CouplingProfile(alpha, coordination).kac_constant();
}

std::complex<double> j_tilde(double k, const ModelParams& params) {
  return Chain(params).j_tilde(k);
}

ModeAmplitudes bogoliubov_amplitudes(double k, const ModelParams& params) {
  return Chain(params).amplitudes(k);
}

double dispersion(double k, const ModelParams& params) { return Chain(params).dispersion(k); }

CriticalFields critical_fields(const ModelParams& params) {
  CriticalFields out;
  out.h_c1 = 2.0;
  out.h_c2_asymptotic = -2.0 * (1.0 - std::pow(2.0, 1.0 - params.alpha()));
  out.h_c2_finite = 2.0 * Chain(params).kernel(std::numbers::pi).re();
  return out;
}

}  // namespace vrei
