#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vrei/asymptotics.hpp"
#include "vrei/errors.hpp"
#include "vrei/special_functions.hpp"

using namespace vrei;
constexpr double kPi = std::numbers::pi;

TEST_CASE("velocity closed form against the exact dispersion slope") {
  for (double alpha : {1.2, 1.5, 1.8, 2.5}) {
    for (int z : {100, 1000, 10000}) {
      const double closed = closed_form_velocity(alpha, z);
      const double exact = exact_velocity(CouplingProfile(alpha, z));
      CHECK(std::abs(closed - exact) / exact < 0.01);
    }
  }
}

TEST_CASE("nearest-neighbour chain has unit small-k slope") {
  for (double alpha : {1.3, 2.0, 3.5}) {
    const Chain chain(ModelParams(alpha, 1, 2.0));
    CHECK(0.5 * dispersion_slope(chain, 1e-4) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(local_loglog_slope(chain, 1e-4) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("g limit and C limits") {
  for (double alpha : {1.2, 1.3, 1.5, 1.6}) {
    const AsymptoticQuantities q = asymptotic_quantities(alpha, 1000000);
    CHECK(std::abs(q.g_value - g_limit(alpha)) / g_limit(alpha) < 0.005);
  }
  // approach slows as alpha -> 2, the finite-Z correction goes like Z^(alpha-2)
  double prev = 0.0;
  for (double alpha : {1.6, 1.7, 1.8, 1.9}) {
    const double rel = std::abs(asymptotic_quantities(alpha, 1000000).g_value - g_limit(alpha)) / g_limit(alpha);
    CHECK(rel > prev);
    prev = rel;
  }
  CHECK(g_limit(1.5) == doctest::Approx(6.0 / kPi));
  CHECK(c_from_g(0.0) == 1.0);
  CHECK(c_from_g(1e9) == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("asymptotic quantity invariants") {
  for (double alpha : {1.1, 1.5, 1.9, 2.0, 2.5, 3.0, 4.0}) {
    for (int z : {1, 2, 10, 1000}) {
      const AsymptoticQuantities q = asymptotic_quantities(alpha, z);
      CHECK(q.crossover_k == kPi / z);
      CHECK(q.c_value > 0.0);
      CHECK(q.c_value <= 1.0);
      CHECK(std::abs(q.eps0_estimate) <= 0.5);
      CHECK(q.eta == eta_theory(alpha));
    }
  }
  CHECK(asymptotic_quantities(2.0, 50).velocity_numeric);
  CHECK(asymptotic_quantities(3.0, 50).curvature_numeric);
  CHECK_FALSE(asymptotic_quantities(2.5, 50).velocity_numeric);
  CHECK(asymptotic_quantities(1.5, 50).vmax_note == GroupVelocityNote::diverges_small_k);
  CHECK(asymptotic_quantities(2.5, 50).vmax_note == GroupVelocityNote::bounded);
  CHECK_THROWS_AS(closed_form_velocity(2.0, 10), SingularityError);
  CHECK_THROWS_AS(closed_form_curvature(3.0, 10), SingularityError);
}

TEST_CASE("numeric fallbacks agree with neighbouring closed forms") {
  const double v2 = asymptotic_quantities(2.0, 1000).velocity;
  const double below = closed_form_velocity(1.999, 1000);
  const double above = closed_form_velocity(2.001, 1000);
  CHECK(v2 == doctest::Approx(0.5 * (below + above)).epsilon(5e-3));
  const double r3 = asymptotic_quantities(3.0, 1000).curvature;
  CHECK(r3 == doctest::Approx(closed_form_curvature(3.001, 1000)).epsilon(5e-3));
  CHECK(exact_curvature(CouplingProfile(2.5, 300)) ==
        doctest::Approx(closed_form_curvature(2.5, 300)).epsilon(0.01));
}

TEST_CASE("eps0 estimate stays inside (0, 1/2) and approaches C/2") {
  for (double alpha : {1.2, 1.5, 1.8}) {
    for (int z = 2; z <= 4096; z *= 2) {
      const AsymptoticQuantities q = asymptotic_quantities(alpha, z);
      CHECK(q.eps0_estimate > 0.0);
      CHECK(q.eps0_estimate < 0.5);
      CHECK(q.eps0_estimate < 0.5 * q.c_value);
      CHECK(0.5 * q.c_value - q.eps0_estimate == doctest::Approx(0.25 / z));
    }
  }
}

TEST_CASE("eps0 estimate versus Z follows the drift of C") {
  // monotone rise only for alpha close to 1; otherwise C(Z) falls faster than 1/(4Z)
  auto series = [](double alpha) {
    std::vector<double> out;
    for (int z = 2; z <= 4096; z *= 2) out.push_back(asymptotic_quantities(alpha, z).eps0_estimate);
    return out;
  };
  const auto low = series(1.2);
  for (std::size_t i = 1; i < low.size(); ++i) CHECK(low[i] > low[i - 1]);
  for (double alpha : {1.5, 1.8}) {
    const auto e = series(alpha);
    const auto peak = std::max_element(e.begin(), e.end()) - e.begin();
    CHECK(peak > 0);
    CHECK(peak < static_cast<long>(e.size()) - 1);
    for (long i = 1; i <= peak; ++i) CHECK(e[i] > e[i - 1]);
    for (std::size_t i = peak + 1; i < e.size(); ++i) CHECK(e[i] < e[i - 1]);
  }
}

TEST_CASE("velocity prefactor stabilizes under Z scaling") {
  // alpha in {1.2, 1.9} converge too slowly for the 2% window at these Z
  for (double alpha : {1.4, 1.5, 1.7}) {
    const double r5 = exact_velocity(CouplingProfile(alpha, 100000)) / std::pow(1e5, 2.0 - alpha);
    const double r6 = exact_velocity(CouplingProfile(alpha, 1000000)) / std::pow(1e6, 2.0 - alpha);
    CHECK(std::abs(r5 - r6) / r6 < 0.02);
    const double limit = 1.0 / ((2.0 - alpha) * riemann_zeta(alpha));
    CHECK(std::abs(r6 - limit) / limit < 0.1);
  }
}

TEST_CASE("dispersion crossover near the origin") {
  for (int z : {10, 100}) {
    const Chain chain(ModelParams(1.5, z, 2.0));
    for (double f : {0.01, 0.1, 0.29}) {
      CHECK(std::abs(local_loglog_slope(chain, f * kPi / z) - 1.0) < 0.05);
    }
  }
}

TEST_CASE("eta fit guards") {
  CHECK_THROWS_AS(eta_exponent(1.5, {100, 200}), FitError);
  CHECK_THROWS_AS(eta_exponent(1.5, {100, 200, 500}), FitError);
  const EtaFit f = eta_exponent(2.5, geometric_grid(10000, 10000000, 6));
  CHECK(std::abs(f.eta) < 0.05);
  CHECK(f.slopes.size() == 6);
  CHECK(f.probe_k == doctest::Approx(0.005 * kPi / 10000000));
}

TEST_CASE("geometric grid") {
  const auto g = geometric_grid(10, 10000, 4);
  REQUIRE(g.size() == 4);
  CHECK(g.front() == 10);
  CHECK(g[1] == 100);
  CHECK(g.back() == 10000);
  const auto dense = geometric_grid(1, 5, 50);
  CHECK(dense.size() == 5);
  CHECK_THROWS_AS(geometric_grid(0, 10, 3), DomainError);
}
