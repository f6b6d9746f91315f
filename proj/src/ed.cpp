#include "vrei/ed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "vrei/entanglement.hpp"
#include "vrei/errors.hpp"

namespace vrei {

namespace {

constexpr double kPi = std::numbers::pi;

void require_ed_size(const FiniteChainSpec& spec) {
  if (spec.sites() > kMaxEdSites) {
    throw DomainError("exact diagonalization limited to N <= " + std::to_string(kMaxEdSites));
  }
}

int popcount_parity(std::uint32_t s) { return (std::popcount(s) % 2 == 0) ? +1 : -1; }

Eigen::MatrixXd tridiagonal(const std::vector<double>& a, const std::vector<double>& b, int m) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    t(i, i) = a[i];
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = b[i];
  }
  return t;
}

template <class Vector>
double reduced_entropy_impl(const Vector& state, int sites, int block_size) {
  if (block_size < 1 || block_size >= sites) {
    throw DomainError("block size must satisfy 1 <= M < N");
  }
  const Eigen::Index dim = Eigen::Index{1} << sites;
  if (state.size() != dim) throw DomainError("state length does not match 2^N");
  const Eigen::Index low = Eigen::Index{1} << block_size;
  const Eigen::Index high = dim / low;
  using Scalar = typename Vector::Scalar;
  // Basis index = high * 2^M + low: the block occupies the low bits.
  Eigen::Map<const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> amp(state.data(), low,
                                                                               high);
  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> rho = amp * amp.adjoint();
  const double trace = std::real(rho.trace());
  if (std::abs(trace - 1.0) > 1e-10) throw SpectralError("state is not normalized");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> solver(
      rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double p = solver.eigenvalues()(i);
    if (p > 1e-300) s -= p * std::log2(p);
  }
  return s;
}

}  // namespace

FiniteChainSpec::FiniteChainSpec(int sites, const ModelParams& params)
    : sites_(sites), params_(params) {
  if (sites < 4 || sites % 2 != 0) throw DomainError("N must be even and at least 4");
  if (params.coordination() > sites / 2 - 1) throw DomainError("Z must not exceed N/2 - 1");
}

std::vector<double> FiniteChainSpec::positive_momenta() const {
  std::vector<double> k(static_cast<std::size_t>(sites_ / 2));
  for (int q = 1; q <= sites_ / 2; ++q) {
    k[static_cast<std::size_t>(q - 1)] = (2.0 * q - 1.0) * kPi / sites_;
  }
  return k;
}

ParitySector build_parity_sector(const FiniteChainSpec& spec, int parity) {
  require_ed_size(spec);
  if (parity != 1 && parity != -1) throw DomainError("parity must be +1 or -1");
  const int n_sites = spec.sites();
  const auto& p = spec.params();
  const CouplingProfile profile(p.alpha(), p.coordination());
  const auto couplings = profile.couplings();
  const double half_h = 0.5 * p.field();

  ParitySector sector;
  sector.parity = parity;
  const std::uint32_t full = 1u << n_sites;
  std::vector<std::int32_t> index(full, -1);
  for (std::uint32_t s = 0; s < full; ++s) {
    if (popcount_parity(s) == parity) {
      index[s] = static_cast<std::int32_t>(sector.states.size());
      sector.states.push_back(s);
    }
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(sector.states.size() * static_cast<std::size_t>(n_sites * p.coordination() + 1));
  for (std::size_t col = 0; col < sector.states.size(); ++col) {
    const std::uint32_t s = sector.states[col];
    const int occupied = std::popcount(s);
    triplets.emplace_back(static_cast<int>(col), static_cast<int>(col),
                          -half_h * (n_sites - 2.0 * occupied));
    for (int n = 0; n < n_sites; ++n) {
      for (int r = 1; r <= p.coordination(); ++r) {
        const int m = (n + r) % n_sites;
        int string_occ = 0;
        for (int q = 1; q < r; ++q) string_occ += (s >> ((n + q) % n_sites)) & 1u;
        const double sign = (string_occ % 2 == 0) ? 1.0 : -1.0;
        const std::uint32_t t = s ^ (1u << n) ^ (1u << m);
        triplets.emplace_back(index[t], static_cast<int>(col),
                              -couplings[static_cast<std::size_t>(r - 1)] * sign);
      }
    }
  }
  const auto dim = static_cast<Eigen::Index>(sector.states.size());
  sector.hamiltonian.resize(dim, dim);
  sector.hamiltonian.setFromTriplets(triplets.begin(), triplets.end());
  return sector;
}

EigenPair lanczos_ground(const Eigen::SparseMatrix<double>& h, double tol, int max_iterations) {
  const Eigen::Index dim = h.rows();
  if (dim == 0) throw DomainError("empty Hamiltonian");
  const int limit = static_cast<int>(std::min<Eigen::Index>(dim, max_iterations));
  Eigen::MatrixXd basis(dim, limit);
  std::vector<double> a, b;
  basis.col(0) = Eigen::VectorXd::Ones(dim) / std::sqrt(static_cast<double>(dim));

  EigenPair out;
  for (int j = 0; j < limit; ++j) {
    Eigen::VectorXd w = h * basis.col(j);
    a.push_back(basis.col(j).dot(w));
    // Full reorthogonalization, applied twice.
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXd c = basis.leftCols(j + 1).transpose() * w;
      w -= basis.leftCols(j + 1) * c;
    }
    const double beta = w.norm();
    const int m = j + 1;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri(tridiagonal(a, b, m));
    const double residual = beta * std::abs(tri.eigenvectors()(m - 1, 0));
    if (residual < tol || beta < 1e-13) {
      out.value = tri.eigenvalues()(0);
      out.vector = basis.leftCols(m) * tri.eigenvectors().col(0);
      out.vector.normalize();
      out.iterations = m;
      return out;
    }
    if (m == limit) break;
    b.push_back(beta);
    basis.col(j + 1) = w / beta;
  }
  throw ConvergenceError("Lanczos did not converge");
}

EdGroundState ground_state_ed(const FiniteChainSpec& spec) {
  const ParitySector even = build_parity_sector(spec, +1);
  const ParitySector odd = build_parity_sector(spec, -1);
  const EigenPair ge = lanczos_ground(even.hamiltonian);
  const EigenPair go = lanczos_ground(odd.hamiltonian);

  EdGroundState out;
  out.even_energy = ge.value;
  out.odd_energy = go.value;
  out.degenerate = std::abs(ge.value - go.value) < 1e-10;
  // The free-fermion vacuum lives in the even sector; ties stay there.
  const bool use_odd = !out.degenerate && go.value < ge.value;
  const ParitySector& sector = use_odd ? odd : even;
  const EigenPair& pair = use_odd ? go : ge;
  out.parity = sector.parity;
  out.energy = pair.value;
  out.state = Eigen::VectorXd::Zero(Eigen::Index{1} << spec.sites());
  for (std::size_t i = 0; i < sector.states.size(); ++i) {
    out.state(sector.states[i]) = pair.vector(static_cast<Eigen::Index>(i));
  }
  return out;
}

double parity_expectation(const Eigen::VectorXd& state) {
  double p = 0.0;
  for (Eigen::Index s = 0; s < state.size(); ++s) {
    p += popcount_parity(static_cast<std::uint32_t>(s)) * state(s) * state(s);
  }
  return p;
}

double reduced_entropy_ed(const Eigen::VectorXd& state, int sites, int block_size) {
  return reduced_entropy_impl(state, sites, block_size);
}

double reduced_entropy_ed(const Eigen::VectorXcd& state, int sites, int block_size) {
  return reduced_entropy_impl(state, sites, block_size);
}

EdEvolution::EdEvolution(const FiniteChainSpec& spec) : sites_(spec.sites()) {
  const ParitySector even = build_parity_sector(spec, +1);
  states_ = even.states;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(even.hamiltonian));
  energies_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
  // |0...0> is the first even-sector basis state.
  initial_overlap_ = vectors_.row(0).transpose();
}

Eigen::VectorXcd EdEvolution::state_at(double t) const {
  Eigen::VectorXcd coeff(energies_.size());
  for (Eigen::Index i = 0; i < energies_.size(); ++i) {
    coeff(i) = std::polar(initial_overlap_(i), -energies_(i) * t);
  }
  const Eigen::VectorXcd sector_state = vectors_.cast<std::complex<double>>() * coeff;
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(Eigen::Index{1} << sites_);
  for (std::size_t i = 0; i < states_.size(); ++i) {
    full(states_[i]) = sector_state(static_cast<Eigen::Index>(i));
  }
  return full;
}

double fermionic_ground_energy(const FiniteChainSpec& spec) {
  const Chain chain(spec.params());
  double e = 0.0;
  for (double k : spec.positive_momenta()) e -= chain.dispersion(k);
  return e;
}

CorrelatorTable finite_free_fermion(const FiniteChainSpec& spec, int r_max) {
  if (r_max < 0 || r_max >= spec.sites() / 2) throw DomainError("r_max must lie in [0, N/2)");
  const Chain chain(spec.params());
  CorrelatorTable table;
  table.coordination = spec.params().coordination();
  table.distances.resize(static_cast<std::size_t>(r_max + 1));
  table.alpha_r.assign(table.distances.size(), 0.0);
  table.beta_r.assign(table.distances.size(), 0.0);
  const double w = 2.0 / spec.sites();
  for (double k : spec.positive_momenta()) {
    const ModeAmplitudes m = chain.amplitudes(k);
    for (int r = 0; r <= r_max; ++r) {
      const auto i = static_cast<std::size_t>(r);
      table.alpha_r[i] += w * m.u_sq() * std::cos(k * r);
      table.beta_r[i] += w * m.uv() * std::sin(k * r);
    }
  }
  for (int r = 0; r <= r_max; ++r) table.distances[static_cast<std::size_t>(r)] = r;
  attach_lengths(table, spec.params().alpha(), spec.params().field());
  return table;
}

double finite_block_entropy(const FiniteChainSpec& spec, int block_size) {
  const CorrelatorTable table = finite_free_fermion(spec, block_size - 1);
  return block_entropy(assemble_correlation_matrix<double>(table.alpha_r, table.beta_r, block_size));
}

std::vector<ValidationCase> default_validation_cases() {
  std::vector<ValidationCase> cases;
  for (int n : {6, 8, 10}) {
    for (int z : {1, 2, 3}) {
      if (z > n / 2 - 1) continue;
      for (double alpha : {1.3, 2.2}) {
        for (double h : {1.0, 2.0, 3.0}) cases.push_back({n, alpha, z, h});
      }
    }
  }
  return cases;
}

std::vector<ValidationRecord> run_validation(const std::vector<ValidationCase>& cases,
                                             const std::vector<int>& block_sizes) {
  std::vector<ValidationRecord> records;
  for (const auto& c : cases) {
    const FiniteChainSpec spec(c.sites, ModelParams(c.alpha, c.coordination, c.field));
    const EdGroundState gs = ground_state_ed(spec);
    const double e_ff = fermionic_ground_energy(spec);
    for (int m : block_sizes) {
      ValidationRecord rec;
      rec.input = c;
      rec.block_size = m;
      rec.e0_ed = gs.energy;
      rec.e0_ff = e_ff;
      rec.parity = gs.parity;
      rec.s_ed = reduced_entropy_ed(gs.state, c.sites, m);
      rec.s_ff = finite_block_entropy(spec, m);
      records.push_back(rec);
    }
  }
  return records;
}

}  // namespace vrei
