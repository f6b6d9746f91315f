#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "vrei/entanglement.hpp"
#include "vrei/errors.hpp"
#include "vrei/quench.hpp"

using namespace vrei;
constexpr double kPi = std::numbers::pi;

TEST_CASE("mode evolution") {
  const ModelParams p(1.5, 6, 2.0);
  const ModeEvolution start = evolve_mode(0.7, 0.0, p);
  CHECK(std::abs(start.u - 1.0) < 1e-15);
  CHECK(std::abs(start.v) < 1e-15);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> k_dist(0.0, kPi), t_dist(0.0, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double k = k_dist(rng), t = t_dist(rng);
    const ModeAmplitudes m = bogoliubov_amplitudes(k, p);
    const ModeEvolution e = evolve_mode(m, t);
    const double s = std::sin(m.energy * t);
    CHECK(std::norm(e.u) == doctest::Approx(1.0 - 4.0 * s * s * m.u_sq() * m.v * m.v).epsilon(1e-12));
    CHECK(std::abs(std::norm(e.u) + std::norm(e.v) - 1.0) < 1e-12);
  }
}

TEST_CASE("initial correlators of the polarized state") {
  const TimeCorrelators c = time_dependent_correlators(Chain(ModelParams(1.5, 4, 2.0)), 6, 0.0, 1e-12);
  CHECK(c.alpha_r[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (int r = 1; r <= 6; ++r) {
    CHECK(std::abs(c.alpha_r[r]) < 1e-12);
    CHECK(std::abs(c.beta_r[r]) < 1e-12);
  }
}

TEST_CASE("time-dependent correlators against the N = 8192 sum") {
  const ModelParams p(1.5, 2, 2.0);
  const auto [a, b] = time_dependent_correlators(1, 1.0, p, 1e-12);
  const TimeCorrelators finite = finite_time_correlators(FiniteChainSpec(8192, p), 1, 1.0);
  CHECK(std::abs(a - finite.alpha_r[1]) < 1e-5);
  CHECK(std::abs(b - finite.beta_r[1]) < 1e-5);
  CHECK(std::abs(b.imag()) > 1e-3);  // genuinely complex
}

TEST_CASE("finite-N sums use the evolved amplitudes") {
  const ModelParams p(2.2, 3, 2.0);
  const FiniteChainSpec spec(40, p);
  const double t = 2.3;
  const TimeCorrelators c = finite_time_correlators(spec, 4, t);
  std::vector<std::complex<double>> beta(5, 0.0);
  std::vector<double> alpha(5, 0.0);
  for (double k : spec.positive_momenta()) {
    const ModeEvolution e = evolve_mode(k, t, p);
    for (int r = 0; r <= 4; ++r) {
      alpha[r] += 2.0 / 40 * std::norm(e.u) * std::cos(k * r);
      beta[r] += 2.0 / 40 * e.u * std::conj(e.v) * std::sin(k * r);
    }
  }
  for (int r = 0; r <= 4; ++r) {
    CHECK(std::abs(c.alpha_r[r] - alpha[r]) < 1e-14);
    CHECK(std::abs(c.beta_r[r] - beta[r]) < 1e-14);
  }
}

TEST_CASE("quench entropy matches exact time evolution") {
  for (int z : {1, 2, 3}) {
    const FiniteChainSpec spec(10, ModelParams(1.5, z, 2.0));
    const EdEvolution ed(spec);
    for (double t : {0.0, 0.4, 1.3, 5.0}) {
      const Eigen::VectorXcd psi = ed.state_at(t);
      const TimeCorrelators c = finite_time_correlators(spec, 2, t);
      for (int m : {1, 2, 3}) {
        CAPTURE(z);
        CAPTURE(t);
        CAPTURE(m);
        CHECK(std::abs(reduced_entropy_ed(psi, 10, m) - quench_entropy(c, m)) < 1e-8);
      }
    }
  }
}

TEST_CASE("trajectory averaging") {
  const std::vector<double> t = {0.0, 0.5, 1.0, 1.7, 2.0, 3.0};
  const std::vector<double> flat(t.size(), 0.37);
  CHECK(trapezoid_mean(t, flat, 0.2, 2.5) == 0.37);
  std::vector<double> line;
  for (double x : t) line.push_back(2.0 * x + 1.0);
  CHECK(trapezoid_mean(t, line, 0.5, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(trapezoid_mean(t, flat, 0.5, 3.0), DomainError);
  CHECK_THROWS_AS(trapezoid_mean(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 1.0}, 0.5, 1.0),
                  DomainError);
}

TEST_CASE("onset detection") {
  std::vector<double> ramp;
  for (int i = 0; i < 400; ++i) ramp.push_back(1.0 - std::exp(-0.02 * i));
  const auto onset = detect_onset(ramp, 50, 0.05);
  REQUIRE(onset);
  CHECK(*onset > 49);
  CHECK(*onset < 400);
  CHECK_FALSE(detect_onset(std::vector<double>(30, 1.0), 50, 0.05));
  CHECK(*detect_onset(std::vector<double>(60, 1.0), 50, 0.05) == 49);
}

TEST_CASE("config validation") {
  const ModelParams p(1.5, 4, 2.0);
  CHECK_THROWS_AS(QuenchConfig(p, {0.0, 1.0}, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(QuenchConfig(p, {0.0, 1.0}, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(QuenchConfig(p, {1.0, 0.0}, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(QuenchConfig(p, {-1.0, 0.0}, 0.0, 1.0), DomainError);
}

TEST_CASE("trajectory starts from a product state") {
  const ModelParams p(1.5, 4, 2.0);
  for (int m : {1, 2, 4}) {
    const QuenchTrajectory tr = entropy_trajectory(QuenchConfig(p, {0.0, 0.5, 1.0}, 0.0, 1.0), m, 1e-10);
    CHECK(std::abs(tr.entropies[0]) < 1e-10);
    CHECK(tr.entropies[2] > 0.0);
    CHECK(tr.mean <= *std::max_element(tr.entropies.begin(), tr.entropies.end()));
    CHECK(tr.eps0_bar.has_value() == (m == 1));
  }
}

TEST_CASE("long-time average of the single-site occupation") {
  for (double alpha : {1.2, 1.5, 1.9}) {
    for (int z : {1, 10, 100}) {
      const ModelParams p(alpha, z, 2.0);
      const Epsilon0Bar e = epsilon0_bar_analytic(p);
      CHECK(std::abs(e.quadrature) <= 0.5);
      CHECK(binary_entropy_eps(-e.quadrature) == binary_entropy_eps(e.quadrature));
      // U^4 + V^4 >= U^2 pointwise for U^2 >= 1/2, so the average keeps the
      // static sign and is never further from 1/2 than the static value
      CHECK(e.quadrature >= 0.0);
      CHECK(e.quadrature <= e.static_eps0 + 1e-12);
      CHECK(binary_entropy_eps(e.quadrature) >= block_entropy(1, p, 1e-12) - 1e-12);
      // the trapezoid closed form leaves the probability bound
      CHECK(e.closed_form > 0.5);
    }
  }
  CHECK(epsilon0_bar_analytic(ModelParams(1.5, 1, 2.0)).quadrature == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("automatic schedule saturates") {
  const QuenchRun run = run_quench(ModelParams(1.5, 1, 2.0), 1, 1e-10);
  const auto& tr = run.trajectory;
  CHECK(std::abs(tr.entropies.front()) < 1e-10);
  CHECK(run.window_rel_std < 0.05);
  CHECK(tr.window == doctest::Approx(10.0 * tr.t0));
  CHECK(tr.times.back() >= tr.t0 + tr.window - 1e-9);
  CHECK(run.time_step * 4.0 <= 0.1 + 1e-12);
  CHECK(tr.mean == doctest::Approx(binary_entropy_eps(*tr.eps0_bar)).epsilon(1e-3));
}
