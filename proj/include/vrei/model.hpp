#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

namespace vrei {

// Model tuple (alpha, Z, h) and the block size used by entropy queries.
// Construction validates: alpha > 1, Z >= 1, M >= 1.
class ModelParams {
 public:
  ModelParams(double alpha, int coordination, double field, int block_size = 1);

  double alpha() const noexcept { return alpha_; }
  int coordination() const noexcept { return coordination_; }
  double field() const noexcept { return field_; }
  int block_size() const noexcept { return block_size_; }

  ModelParams with_field(double field) const;
  ModelParams with_coordination(int coordination) const;
  ModelParams with_block_size(int block_size) const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double alpha_;
  int coordination_;
  double field_;
  int block_size_;
};

// Real and imaginary parts of the normalized kernel J~_k, with the real part
// carried as the deficit 1 - Re J~_k = sum_r J_r * 2 sin^2(kr/2) so that the
// small-k behavior survives without cancellation.
struct KernelValue {
  double re_deficit = 0.0;
  double im = 0.0;

  double re() const noexcept { return 1.0 - re_deficit; }
  std::complex<double> value() const noexcept { return {re(), im}; }
};

struct ModeAmplitudes {
  double momentum = 0.0;
  std::complex<double> j_tilde;
  double energy = 0.0;
  double u = 1.0;
  double v = 0.0;
  bool degenerate = false;  // exact gap closing, (u, v) set by convention

  double u_sq() const noexcept { return u * u; }
  double uv() const noexcept { return u * v; }
};

// Kac-normalized power-law couplings J_r = r^-alpha / A for r = 1..Z.
// Immutable after construction; share freely across threads.
class CouplingProfile {
 public:
  CouplingProfile(double alpha, int coordination);

  double alpha() const noexcept { return alpha_; }
  int coordination() const noexcept { return static_cast<int>(couplings_.size()); }
  double kac_constant() const noexcept { return kac_constant_; }
  std::span<const double> couplings() const noexcept { return couplings_; }

  // Exact sum over the Z couplings using a reseeded rotation recurrence.
  KernelValue kernel(double k) const;

 private:
  double alpha_;
  double kac_constant_;
  std::vector<double> couplings_;
};

// Bundles parameters with a shared coupling table; every k-space quantity of
// the thermodynamic-limit model is evaluated through this type.
class Chain {
 public:
  explicit Chain(const ModelParams& params);
  Chain(const ModelParams& params, std::shared_ptr<const CouplingProfile> profile);

  const ModelParams& params() const noexcept { return params_; }
  const CouplingProfile& profile() const noexcept { return *profile_; }
  std::shared_ptr<const CouplingProfile> shared_profile() const noexcept { return profile_; }

  // Same couplings at another field value (no table rebuild).
  Chain at_field(double field) const;

  KernelValue kernel(double k) const { return profile_->kernel(k); }
  std::complex<double> j_tilde(double k) const { return kernel(k).value(); }
  double dispersion(double k) const;
  ModeAmplitudes amplitudes(double k) const;

 private:
  ModelParams params_;
  std::shared_ptr<const CouplingProfile> profile_;
};

// Bogoliubov amplitudes from the diagonal term x = h/2 - Re J~ and Im J~.
ModeAmplitudes amplitudes_from_kernel(double k, double field, const KernelValue& kernel);

double kac_normalization(double alpha, int coordination);
std::complex<double> j_tilde(double k, const ModelParams& params);
ModeAmplitudes bogoliubov_amplitudes(double k, const ModelParams& params);
double dispersion(double k, const ModelParams& params);

struct CriticalFields {
  double h_c1 = 2.0;               // gap closes at k = 0, independent of Z
  double h_c2_asymptotic = 0.0;    // Z -> infinity value -2(1 - 2^(1-alpha))
  double h_c2_finite = 0.0;        // 2 Re J~_pi for the actual Z
};

// The second critical field at finite Z is where the gap closes at k = pi,
// i.e. h = 2 Re J~_pi; the minimum of omega over k is located there.
CriticalFields critical_fields(const ModelParams& params);

}  // namespace vrei
