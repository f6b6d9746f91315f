// End-to-end acceptance run. One PASS/FAIL line per criterion; exit status is
// nonzero when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "vrei/asymptotics.hpp"
#include "vrei/correlators.hpp"
#include "vrei/ed.hpp"
#include "vrei/entanglement.hpp"
#include "vrei/errors.hpp"
#include "vrei/model.hpp"
#include "vrei/quench.hpp"
#include "vrei/special_functions.hpp"

using namespace vrei;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-10;

int failures = 0;

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int id, const std::string& name, bool ok, const std::string& detail, const Timer& t) {
  if (!ok) ++failures;
  std::printf("%s [%d] %s: %s (%.1f s)\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str(),
              t.seconds());
  std::fflush(stdout);
}

std::vector<int> powers_of_two(int lo, int hi) {
  std::vector<int> out;
  for (int z = lo; z <= hi; z *= 2) out.push_back(z);
  return out;
}

std::vector<double> alpha_grid() {
  std::vector<double> out;
  for (int i = 11; i <= 24; ++i) out.push_back(i / 10.0);
  return out;
}

bool non_increasing(const std::vector<ScanSample>& s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].entropy > s[i - 1].entropy + 1e-12) return false;
  }
  return true;
}

void criterion_ed() {
  Timer t;
  const auto records = run_validation(default_validation_cases(), {1, 2, 3});
  double de = 0.0, ds = 0.0;
  for (const auto& r : records) {
    de = std::max(de, r.energy_delta());
    ds = std::max(ds, r.entropy_delta());
  }
  const bool ok = !records.empty() && de < 1e-9 && ds < 1e-8;
  report(1, "ED equivalence", ok,
         std::to_string(records.size()) + " records, max|dE| = " + fmt("%.2e", de) +
             ", max|dS| = " + fmt("%.2e", ds) + " (limits 1e-9, 1e-8)",
         t);
}

void criterion_crossover() {
  Timer t;
  bool ok = true;
  std::string detail;
  const double alpha = 1.5;
  for (int z : {10, 100}) {
    const Chain chain(ModelParams(alpha, z, 2.0));
    auto scan = [&](double lo, double hi, double target, const char* label) {
      if (!(hi > lo)) {
        ok = false;
        detail += " Z=" + std::to_string(z) + " " + label + " window empty;";
        return;
      }
      double smin = 1e300, smax = -1e300;
      const int n = 24;
      for (int i = 0; i < n; ++i) {
        // open interval (lo, hi)
        const double k = lo * std::pow(hi / lo, (i + 0.5) / n);
        const double s = local_loglog_slope(chain, k);
        smin = std::min(smin, s);
        smax = std::max(smax, s);
      }
      const bool in = std::abs(smin - target) < 0.05 && std::abs(smax - target) < 0.05;
      ok = ok && in;
      detail += " Z=" + std::to_string(z) + " " + label + " slope in [" + fmt("%.3f", smin) + ", " +
                fmt("%.3f", smax) + "] vs " + fmt("%.2f", target) + ";";
    };
    scan(1e-4 * kPi / z, 0.3 * kPi / z, 1.0, "short-k");
    scan(3.0 * kPi / z, 0.3 * kPi, alpha - 1.0, "long-range");
  }
  report(2, "dispersion crossover", ok, detail, t);
}

void criterion_eta() {
  Timer t;
  bool ok = true;
  std::string detail;
  const auto grid = geometric_grid(10000, 10000000, 7);
  for (double alpha : {1.2, 1.5, 1.8, 2.0, 2.5, 3.0}) {
    const double target = alpha < 2.0 ? 2.0 - alpha : 0.0;
    try {
      const EtaFit f = eta_exponent(alpha, grid);
      const bool in = std::abs(f.eta - target) <= 0.05;
      ok = ok && in;
      detail += " a=" + fmt("%.1f", alpha) + " eta=" + fmt("%.4f", f.eta) + (in ? "" : "(out)") + ";";
    } catch (const std::exception& e) {
      ok = false;
      detail += " a=" + fmt("%.1f", alpha) + " fit failed: " + e.what() + ";";
    }
  }
  report(3, "eta exponent", ok, detail, t);
}

void criterion_decay() {
  Timer t;
  bool ok = true;
  std::string detail;
  {
    const double alpha = 1.9;
    const Chain chain(ModelParams(alpha, 500, 2.0 + 1e-3));
    const CorrelatorTable table = correlator_table(chain, 500, kTol);
    const DecayWindow w = default_window(table, DecayRegime::alg_tail);
    detail += " alg tail xi_L=" + fmt("%.0f", table.xi_long) + " window (" + fmt("%.0f", w.r_lo) +
              ", " + fmt("%.0f", w.r_hi) + ")";
    try {
      const DecayFit f = decay_fit(table, DecayRegime::alg_tail);
      const bool in = std::abs(f.value + alpha) <= 0.1;
      ok = ok && in;
      detail += " exponent " + fmt("%.3f", f.value) + " vs " + fmt("%.1f", -alpha) + ";";
    } catch (const FitError& e) {
      ok = false;
      detail += std::string(" fit failed: ") + e.what() + ";";
      try {
        const DecayFit d = decay_fit(table, DecayRegime::alg_tail, DecayWindow{50, 499});
        detail += " (r in [50, 499] slope " + fmt("%.3f", d.value) + ");";
      } catch (const FitError&) {
      }
    }
  }
  {
    const Chain chain(ModelParams(1.9, 1, 2.05));
    const CorrelatorTable table = correlator_table(chain, 130, kTol);
    try {
      const DecayFit f = decay_fit(table, DecayRegime::exp_tail);
      const bool in = std::abs(f.value - 20.0) <= 2.0;
      ok = ok && in;
      detail += " exp tail length " + fmt("%.2f", f.value) + " vs 20 +- 10%;";
    } catch (const FitError& e) {
      ok = false;
      detail += std::string(" exp tail fit failed: ") + e.what() + ";";
    }
  }
  report(4, "correlation decay regimes", ok, detail, t);
}

struct ScanSet {
  int block_size = 1;
  std::vector<ScanResult> scans;
  double seconds = 0.0;
};

ScanSet run_scans(int block_size, int z_hi, int fit_z_max) {
  Timer t;
  ScanSet out;
  out.block_size = block_size;
  const auto zs = powers_of_two(2, z_hi);
  for (double alpha : alpha_grid()) {
    out.scans.push_back(entropy_scan(block_size, alpha, zs, 2.0, kTol, fit_z_max));
  }
  out.seconds = t.seconds();
  return out;
}

void criterion_scaling(const ScanSet& m1, const Timer& t) {
  bool ok = true;
  std::string detail;
  for (const auto& s : m1.scans) {
    if (std::abs(s.alpha - 2.0) > 1e-9) continue;
    if (s.fit) {
      const bool in = std::abs(s.fit->gamma - 1.0) <= 0.1;
      ok = ok && in;
      detail += " a=2.0 gamma=" + fmt("%.3f", s.fit->gamma) + " +- " + fmt("%.3f", s.fit->gamma_err) +
                " vs 1.0 +- 0.1;";
    } else {
      ok = false;
      detail += " a=2.0 fit failed: " + s.fit_failure + ";";
    }
  }
  int bad = 0;
  for (const auto& s : m1.scans) {
    if (!non_increasing(s.samples)) ++bad;
  }
  ok = ok && bad == 0;
  detail += " non-increasing S(Z) for " + std::to_string(m1.scans.size() - bad) + "/" +
            std::to_string(m1.scans.size()) + " alphas;";
  report(5, "entropy scaling", ok, detail, t);
}

void criterion_gamma_alpha(const ScanSet& m1, const ScanSet& m4, const Timer& t) {
  bool ok = true;
  std::string detail;
  struct Ref {
    const ScanSet* set;
    double c[3];
    double sigma[3];
  };
  const Ref refs[] = {{&m1, {-0.37, 0.3, 0.1}, {0.04, 0.1, 0.1}},
                      {&m4, {0.33, -0.46, 0.38}, {0.02, 0.07, 0.06}}};
  for (const Ref& ref : refs) {
    std::vector<AlphaGamma> pts;
    for (const auto& s : ref.set->scans) {
      if (s.fit) pts.push_back({s.alpha, s.fit->gamma});
    }
    detail += " M=" + std::to_string(ref.set->block_size) + ": " + std::to_string(pts.size()) + "/" +
              std::to_string(ref.set->scans.size()) + " gamma fits";
    if (pts.size() != ref.set->scans.size()) ok = false;
    try {
      const QuadraticFit q = fit_gamma_alpha(pts);
      const double c[3] = {q.c0, q.c1, q.c2};
      ok = ok && q.r_squared > 0.95;
      detail += ", R^2=" + fmt("%.4f", q.r_squared);
      for (int i = 0; i < 3; ++i) {
        const bool in = std::abs(c[i] - ref.c[i]) <= 3.0 * ref.sigma[i];
        ok = ok && in;
        detail += ", c" + std::to_string(i) + "=" + fmt("%.3f", c[i]) + " (ref " + fmt("%.2f", ref.c[i]) +
                  " +- " + fmt("%.2f", 3.0 * ref.sigma[i]) + (in ? ")" : ", out)");
      }
      detail += ";";
    } catch (const FitError& e) {
      ok = false;
      detail += std::string(", quadratic fit failed: ") + e.what() + ";";
    }
  }
  report(6, "gamma(alpha) quadratic", ok, detail, t);
}

void criterion_quench() {
  Timer t;
  bool ok = true;
  std::string detail;
  const double alpha = 1.5;
  std::vector<int> zs = {1};
  for (int z : powers_of_two(2, 1024)) zs.push_back(z);
  std::vector<double> means(zs.size(), 0.0);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const int z = zs[i];
    const ModelParams p(alpha, z, 2.0);
    try {
      const QuenchRun run = run_quench(p, 1, kTol);
      means[i] = run.trajectory.mean;
      if (z == 1 || z == 4 || z == 32) {
        const double s0 = run.trajectory.entropies.front();
        const bool zero = run.trajectory.times.front() == 0.0 && std::abs(s0) < 1e-10;
        const bool saturated = run.window_rel_std < 0.05;
        const bool below = run.trajectory.mean < run.s_static;
        ok = ok && zero && saturated && below;
        detail += " Z=" + std::to_string(z) + ": S(0)=" + fmt("%.1e", s0) + ", std/mean=" +
                  fmt("%.3f", run.window_rel_std) + ", S_bar=" + fmt("%.4f", run.trajectory.mean) +
                  (below ? " < " : " >= ") + "S_static=" + fmt("%.4f", run.s_static) + ";";
      }
    } catch (const std::exception& e) {
      ok = false;
      detail += " Z=" + std::to_string(z) + " failed: " + e.what() + ";";
    }
  }
  bool monotone = true;
  for (std::size_t i = 1; i < means.size(); ++i) monotone = monotone && means[i] < means[i - 1];
  ok = ok && monotone;
  detail += std::string(" S_bar(Z) ") + (monotone ? "decreasing" : "not decreasing") + " over Z=1..1024;";
  std::vector<ScanSample> series;
  for (std::size_t i = 1; i < zs.size(); ++i) series.push_back({zs[i], means[i]});
  try {
    const PowerLawFit f = fit_power_law(series);
    ok = ok && f.r_squared > 0.98;
    detail += " power law over Z=2..1024: exponent " + fmt("%.3f", f.gamma) + ", R^2=" +
              fmt("%.4f", f.r_squared) + ";";
  } catch (const FitError& e) {
    ok = false;
    detail += std::string(" power-law fit failed: ") + e.what() + ";";
  }
  report(7, "quench", ok, detail, t);
}

void criterion_special() {
  Timer t;
  bool ok = true;
  std::string detail;
  const double z2 = riemann_zeta(2.0) - kPi * kPi / 6.0;
  const double z0 = riemann_zeta(0.0) + 0.5;
  const double zm1 = riemann_zeta(-1.0) + 1.0 / 12.0;
  const double zerr = std::max({std::abs(z2), std::abs(z0), std::abs(zm1)});
  ok = ok && zerr <= 1e-12;
  detail += " zeta spot max error " + fmt("%.1e", zerr) + ";";
  double verr = 0.0;
  for (double alpha : {1.2, 1.5, 1.8, 2.5}) {
    for (int z : {100, 1000, 10000}) {
      const double closed = closed_form_velocity(alpha, z);
      const double exact = exact_velocity(CouplingProfile(alpha, z));
      verr = std::max(verr, std::abs(closed - exact) / exact);
    }
  }
  ok = ok && verr < 0.01;
  detail += " velocity max rel error " + fmt("%.2e", verr) + ";";
  for (double alpha : {1.2, 1.5, 1.8}) {
    const double g = asymptotic_quantities(alpha, 1000000).g_value;
    const double rel = std::abs(g - g_limit(alpha)) / g_limit(alpha);
    ok = ok && rel <= 0.005;
    detail += " a=" + fmt("%.1f", alpha) + " g rel dev " + fmt("%.4f", rel) + ";";
  }
  report(8, "special functions and asymptotics", ok, detail, t);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_determinism(const std::string& cli) {
  Timer t;
  if (cli.empty()) {
    report(9, "determinism", false, "no CLI path given", t);
    return;
  }
  const auto dir = std::filesystem::temp_directory_path() / "vrei_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::string> commands = {
      "entropy-scan --alphas 1.3,1.7 --z-list 2:256:geometric --block-sizes 1,2",
      "quench --alpha 1.5 --Z 4",
      "correlators --alpha 1.9 --Z 20 --h 2.05 --r-max 60",
      "dispersion --alpha 1.5 --Z 100",
      "validate --suite ed",
  };
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string runs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto out = dir / ("run" + std::to_string(i) + "_" + std::to_string(rep) + ".csv");
      const auto side = dir / ("run" + std::to_string(i) + "_" + std::to_string(rep) + ".json");
      const std::string cmd = "\"" + cli + "\" " + commands[i] + " -o \"" + out.string() +
                              "\" --summary \"" + side.string() + "\" > \"" +
                              (dir / "stdout.txt").string() + "\" 2>&1";
      const int rc = std::system(cmd.c_str());
      if (rc != 0) {
        ok = false;
        detail += " '" + commands[i] + "' exit " + std::to_string(rc) + ";";
      }
      runs[rep] = slurp(out) + '\0' + slurp(side) + '\0' + slurp(dir / "stdout.txt");
    }
    const bool same = runs[0] == runs[1] && runs[0].size() > 2;
    ok = ok && same;
    detail += " " + commands[i].substr(0, commands[i].find(' ')) + (same ? " identical" : " DIFFERS") +
              " (" + std::to_string(runs[0].size()) + " bytes);";
  }
  std::filesystem::remove_all(dir);
  report(9, "determinism", ok, detail, t);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  criterion_ed();
  criterion_crossover();
  criterion_eta();
  criterion_decay();
  Timer scan_timer;
  const ScanSet m1 = run_scans(1, 8192, 10000);
  criterion_scaling(m1, scan_timer);
  Timer quad_timer;
  const ScanSet m4 = run_scans(4, 1024, 1000);
  criterion_gamma_alpha(m1, m4, quad_timer);
  criterion_quench();
  criterion_special();
  criterion_determinism(cli);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
