#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vrei/model.hpp"

namespace vrei {

// Binary entropy (base 2) of a qubit with <c c^dag> = 1/2 + eps0.
double binary_entropy_eps(double eps0);

// -sum mu log2 mu over a correlation-matrix spectrum. Eigenvalues within 1e-8
// of [0, 1] are clamped; anything further out raises SpectralError.
double spectrum_entropy(const Eigen::VectorXd& eigenvalues);

// Pi(M) = [[1 - G, F], [F^dag, G]] with G_ij = alpha_{i-j}, F_ij = beta_{i-j},
// alpha even and beta odd in the separation.
template <class Scalar>
struct BasicBlockCorrelationMatrix {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  int size = 0;
  Eigen::MatrixXd g_block;
  Matrix f_block;
  Matrix pi_matrix;

  Eigen::VectorXd spectrum() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(pi_matrix, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }
};

using BlockCorrelationMatrix = BasicBlockCorrelationMatrix<double>;
using ComplexBlockCorrelationMatrix = BasicBlockCorrelationMatrix<std::complex<double>>;

template <class Scalar>
BasicBlockCorrelationMatrix<Scalar> assemble_correlation_matrix(std::span<const double> alpha_r,
                                                                std::span<const Scalar> beta_r,
                                                                int block_size) {
  const auto m = static_cast<Eigen::Index>(block_size);
  BasicBlockCorrelationMatrix<Scalar> out;
  out.size = block_size;
  out.g_block.resize(m, m);
  out.f_block.resize(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto sep = static_cast<std::size_t>(i > j ? i - j : j - i);
      out.g_block(i, j) = alpha_r[sep];
      out.f_block(i, j) = i >= j ? beta_r[sep] : Scalar(-beta_r[sep]);
    }
  }
  out.pi_matrix.resize(2 * m, 2 * m);
  out.pi_matrix.topLeftCorner(m, m) =
      (Eigen::MatrixXd::Identity(m, m) - out.g_block).template cast<Scalar>();
  out.pi_matrix.topRightCorner(m, m) = out.f_block;
  out.pi_matrix.bottomLeftCorner(m, m) = out.f_block.adjoint();
  out.pi_matrix.bottomRightCorner(m, m) = out.g_block.template cast<Scalar>();
  return out;
}

BlockCorrelationMatrix correlation_matrix(int block_size, const Chain& chain, double tol);
BlockCorrelationMatrix correlation_matrix(int block_size, const ModelParams& params, double tol);

template <class Scalar>
double block_entropy(const BasicBlockCorrelationMatrix<Scalar>& matrix) {
  return spectrum_entropy(matrix.spectrum());
}

double block_entropy(int block_size, const Chain& chain, double tol);
double block_entropy(int block_size, const ModelParams& params, double tol);

struct ScanSample {
  int coordination = 0;
  double entropy = 0.0;
};

struct PowerLawFit {
  double s_inf = 0.0;
  double kappa = 0.0;
  double gamma = 0.0;
  double s_inf_err = 0.0;
  double kappa_err = 0.0;
  double gamma_err = 0.0;
  double rss = 0.0;        // residual sum of squares of S around the model
  double r_squared = 0.0;  // of the log|S - S_inf| against log Z line
  std::size_t points = 0;
};

// Three-parameter fit S = S_inf + kappa Z^-gamma. S_inf is scanned on a
// refining grid inside [S(Z_max) - spread, S(Z_max)] (mirrored for rising
// data); at each trial value (log kappa, gamma) come from linear regression
// of log|S - S_inf| on log Z, and the triple with the smallest squared
// residual wins. Points with |S - S_inf| < 1e-9 are left out of the regression.
PowerLawFit fit_power_law(std::span<const ScanSample> samples);

struct ScanResult {
  int block_size = 1;
  double alpha = 0.0;
  double field = 2.0;
  int fit_z_max = 0;  // samples with Z < fit_z_max enter the fit
  std::vector<ScanSample> samples;
  std::optional<PowerLawFit> fit;
  std::string fit_failure;  // reason when fit is empty
};

// Default fit windows: Z < 10^4 for M = 1 and Z < 10^3 for larger blocks.
int default_fit_z_max(int block_size);

ScanResult entropy_scan(int block_size, double alpha, const std::vector<int>& z_list, double field,
                        double tol, std::optional<int> fit_z_max = std::nullopt);

struct QuadraticFit {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  double c0_err = 0.0, c1_err = 0.0, c2_err = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

struct AlphaGamma {
  double alpha = 0.0;
  double gamma = 0.0;
};

// Ordinary least squares gamma(alpha) = c0 + c1 alpha + c2 alpha^2.
QuadraticFit fit_gamma_alpha(std::span<const AlphaGamma> points);

}  // namespace vrei
