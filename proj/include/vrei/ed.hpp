#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <vector>

#include "vrei/correlators.hpp"
#include "vrei/model.hpp"

namespace vrei {

// Finite periodic spin chain used as a ground-truth oracle. Sites N must be
// even with Z <= N/2 - 1 so that no coupling wraps onto itself.
class FiniteChainSpec {
 public:
  FiniteChainSpec(int sites, const ModelParams& params);

  int sites() const noexcept { return sites_; }
  const ModelParams& params() const noexcept { return params_; }

  // Positive antiperiodic momenta (2q - 1) pi / N, q = 1..N/2.
  std::vector<double> positive_momenta() const;

 private:
  int sites_;
  ModelParams params_;
};

inline constexpr int kMaxEdSites = 14;

// Spin Hamiltonian restricted to one parity sector of P = prod sigma^z.
// Basis bit n set means sigma^z_n = -1 (an occupied Jordan-Wigner fermion).
struct ParitySector {
  int parity = +1;
  std::vector<std::uint32_t> states;  // sector index -> full basis state
  Eigen::SparseMatrix<double> hamiltonian;
};

ParitySector build_parity_sector(const FiniteChainSpec& spec, int parity);

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
  int iterations = 0;
};

// Lowest eigenpair by Lanczos with full reorthogonalization, started from
// the normalized all-ones vector; converged when the residual norm < tol.
EigenPair lanczos_ground(const Eigen::SparseMatrix<double>& h, double tol = 1e-12,
                         int max_iterations = 400);

struct EdGroundState {
  double energy = 0.0;
  Eigen::VectorXd state;  // full 2^N basis
  int parity = +1;
  double even_energy = 0.0;
  double odd_energy = 0.0;
  bool degenerate = false;  // |E_even - E_odd| < 1e-10, even sector chosen
};

EdGroundState ground_state_ed(const FiniteChainSpec& spec);

// Expectation of prod sigma^z in a full-basis state.
double parity_expectation(const Eigen::VectorXd& state);

// Von Neumann entropy (base 2) of sites 0..M-1 of a normalized state on N sites.
double reduced_entropy_ed(const Eigen::VectorXd& state, int sites, int block_size);
double reduced_entropy_ed(const Eigen::VectorXcd& state, int sites, int block_size);

// Even-sector spectral decomposition for exact time evolution of the fully
// polarized state |0...0>.
class EdEvolution {
 public:
  explicit EdEvolution(const FiniteChainSpec& spec);
  Eigen::VectorXcd state_at(double t) const;  // full 2^N basis

 private:
  int sites_;
  std::vector<std::uint32_t> states_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd initial_overlap_;
};

// -sum_{k>0} omega_k over the antiperiodic momenta.
double fermionic_ground_energy(const FiniteChainSpec& spec);

// alpha_r, beta_r as (2/N) sums over the positive antiperiodic momenta.
CorrelatorTable finite_free_fermion(const FiniteChainSpec& spec, int r_max);

double finite_block_entropy(const FiniteChainSpec& spec, int block_size);

struct ValidationCase {
  int sites = 0;
  double alpha = 0.0;
  int coordination = 0;
  double field = 0.0;
};

struct ValidationRecord {
  ValidationCase input;
  int block_size = 0;
  double e0_ed = 0.0;
  double e0_ff = 0.0;
  double s_ed = 0.0;
  double s_ff = 0.0;
  int parity = 0;
  double energy_delta() const { return std::abs(e0_ed - e0_ff); }
  double entropy_delta() const { return std::abs(s_ed - s_ff); }
};

// N in {6, 8, 10}, Z in {1, 2, 3} (Z <= N/2 - 1), alpha in {1.3, 2.2}, h in {1, 2, 3}.
std::vector<ValidationCase> default_validation_cases();

// One record per (case, M) with M in {1, 2, 3}.
std::vector<ValidationRecord> run_validation(const std::vector<ValidationCase>& cases,
                                             const std::vector<int>& block_sizes = {1, 2, 3});

}  // namespace vrei
