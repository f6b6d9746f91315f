#include "vrei/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <numbers>
#include <sstream>

#include "vrei/asymptotics.hpp"
#include "vrei/correlators.hpp"
#include "vrei/ed.hpp"
#include "vrei/entanglement.hpp"
#include "vrei/errors.hpp"
#include "vrei/model.hpp"
#include "vrei/quench.hpp"

namespace vrei {

using nlohmann::json;

namespace {

constexpr double kEdEnergyTol = 1e-9;
constexpr double kEdEntropyTol = 1e-8;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& token) {
  const std::string t = trim(token);
  if (t.empty()) throw DomainError("empty number");
  std::string body = t;
  double scale = 1.0;
  if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
    body = t.substr(0, t.size() - 2);
    scale = std::numbers::pi;
    if (body.empty()) return scale;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(body, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + t + "'");
  }
  if (used != body.size()) throw DomainError("not a number: '" + t + "'");
  return v * scale;
}

int parse_int(const std::string& token) {
  const double v = parse_real(token);
  if (v != std::floor(v) || std::abs(v) > 2e9) throw DomainError("not an integer: '" + token + "'");
  return static_cast<int>(v);
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string join_reals(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
  return s;
}

std::vector<double> alpha_values(const RunConfig& c) {
  return c.alphas.empty() ? std::vector<double>{c.alpha} : parse_real_list(c.alphas);
}
std::vector<int> z_values(const RunConfig& c) {
  return c.z_list.empty() ? std::vector<int>{c.coordination} : parse_int_list(c.z_list);
}
std::vector<int> m_values(const RunConfig& c) {
  return c.block_sizes.empty() ? std::vector<int>{c.block_size} : parse_int_list(c.block_sizes);
}

struct Sink {
  std::ostream& primary;
  std::ostream& summary;
};

class OutputFiles {
 public:
  OutputFiles(const RunConfig& c, std::ostream& out) : out_(out) {
    if (!c.output.empty()) {
      primary_.open(c.output, std::ios::binary);
      if (!primary_) throw DomainError("cannot open output file " + c.output);
    }
    const std::string summary_path =
        !c.summary.empty() ? c.summary : (c.output.empty() ? "" : c.output + ".json");
    if (!summary_path.empty()) {
      summary_.open(summary_path, std::ios::binary);
      if (!summary_) throw DomainError("cannot open summary file " + summary_path);
    }
  }
  std::ostream& primary() { return primary_.is_open() ? primary_ : out_; }
  std::ostream& summary() { return summary_.is_open() ? summary_ : out_; }

 private:
  std::ostream& out_;
  std::ofstream primary_;
  std::ofstream summary_;
};

json echo_json(const ConfigEcho& echo) {
  json j = json::object();
  for (const auto& [k, v] : echo) j[k] = v;
  return j;
}

void emit_table(const RunConfig& c, const CsvTable& table, const std::vector<std::string>& columns,
                const std::vector<std::vector<double>>& rows, std::ostream& out) {
  const ConfigEcho echo = resolved_echo(c);
  if (c.format == OutputFormat::csv) {
    table.write(out, echo);
    return;
  }
  json j;
  j["config"] = echo_json(echo);
  j["columns"] = columns;
  j["rows"] = rows;
  out << j.dump(2) << '\n';
}

void emit_summary(const RunConfig& c, json body, std::ostream& out) {
  body["config"] = echo_json(resolved_echo(c));
  out << body.dump(2) << '\n';
}

json number(double x) { return std::isfinite(x) ? json(x) : json(format_double(x)); }

int run_dispersion(const RunConfig& c, OutputFiles& files) {
  const Chain chain(ModelParams(c.alpha, c.coordination, c.field));
  const std::vector<std::string> cols = {"k", "omega"};
  CsvTable table(cols);
  std::vector<std::vector<double>> rows;
  for (double k : parse_k_grid(c.k_grid)) {
    rows.push_back({k, chain.dispersion(k)});
    table.add_row(rows.back());
  }
  emit_table(c, table, cols, rows, files.primary());
  return kExitOk;
}

int run_correlators(const RunConfig& c, OutputFiles& files) {
  const Chain chain(ModelParams(c.alpha, c.coordination, c.field));
  const CorrelatorTable t = correlator_table(chain, c.r_max, c.tol);
  const std::vector<std::string> cols = {"r", "alpha_r", "beta_r"};
  CsvTable table(cols);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < t.size(); ++i) {
    rows.push_back({static_cast<double>(t.distances[i]), t.alpha_r[i], t.beta_r[i]});
    table.add_row(rows.back());
  }
  emit_table(c, table, cols, rows, files.primary());
  return kExitOk;
}

json fit_json(const ScanResult& s) {
  json j;
  j["M"] = s.block_size;
  j["alpha"] = s.alpha;
  j["h"] = s.field;
  j["fit_z_max"] = s.fit_z_max;
  if (s.fit) {
    const PowerLawFit& f = *s.fit;
    j["s_inf"] = number(f.s_inf);
    j["s_inf_err"] = number(f.s_inf_err);
    j["kappa"] = number(f.kappa);
    j["kappa_err"] = number(f.kappa_err);
    j["gamma"] = number(f.gamma);
    j["gamma_err"] = number(f.gamma_err);
    j["rss"] = number(f.rss);
    j["r_squared"] = number(f.r_squared);
    j["points"] = f.points;
  } else {
    j["fit_failure"] = s.fit_failure;
  }
  return j;
}

json quadratic_json(int m, const QuadraticFit& q) {
  json j;
  j["M"] = m;
  j["c0"] = q.c0;
  j["c1"] = q.c1;
  j["c2"] = q.c2;
  j["c0_err"] = q.c0_err;
  j["c1_err"] = q.c1_err;
  j["c2_err"] = q.c2_err;
  j["r_squared"] = q.r_squared;
  j["points"] = q.points;
  return j;
}

json gamma_alpha_fits(const std::vector<ScanResult>& scans) {
  std::map<int, std::vector<AlphaGamma>> by_m;
  for (const auto& s : scans) {
    if (s.fit) by_m[s.block_size].push_back({s.alpha, s.fit->gamma});
  }
  json out = json::array();
  for (auto& [m, pts] : by_m) {
    if (pts.size() < 5) continue;
    try {
      out.push_back(quadratic_json(m, fit_gamma_alpha(pts)));
    } catch (const FitError& e) {
      out.push_back({{"M", m}, {"fit_failure", e.what()}});
    }
  }
  return out;
}

int run_entropy_scan(const RunConfig& c, OutputFiles& files) {
  const std::vector<std::string> cols = {"M", "alpha", "Z", "h", "S"};
  CsvTable table(cols);
  std::vector<std::vector<double>> rows;
  std::vector<ScanResult> scans;
  const std::vector<int> zs = z_values(c);
  for (int m : m_values(c)) {
    for (double a : alpha_values(c)) {
      std::optional<int> z_max;
      if (c.fit_z_max > 0) z_max = c.fit_z_max;
      ScanResult s = entropy_scan(m, a, zs, c.field, c.tol, z_max);
      for (const auto& sample : s.samples) {
        rows.push_back({static_cast<double>(m), a, static_cast<double>(sample.coordination),
                        c.field, sample.entropy});
        table.add_row(rows.back());
      }
      scans.push_back(std::move(s));
    }
  }
  emit_table(c, table, cols, rows, files.primary());
  json body;
  body["fits"] = json::array();
  for (const auto& s : scans) body["fits"].push_back(fit_json(s));
  body["gamma_alpha"] = gamma_alpha_fits(scans);
  emit_summary(c, body, files.summary());
  return kExitOk;
}

int run_quench_command(const RunConfig& c, OutputFiles& files) {
  const ModelParams params(c.alpha, c.coordination, c.field);
  QuenchTrajectory traj;
  double s_static = 0.0;
  double dt = 0.0;
  if (c.times.empty()) {
    QuenchRun r = run_quench(params, c.block_size, c.tol);
    traj = std::move(r.trajectory);
    s_static = r.s_static;
    dt = r.time_step;
  } else {
    std::vector<double> grid = parse_k_grid(c.times);
    double t0 = c.t0;
    if (t0 < 0.0) {
      const QuenchConfig probe(params, grid, 0.0, 1.0);
      const QuenchTrajectory pre = entropy_trajectory(probe, c.block_size, c.tol);
      const auto onset = detect_onset(pre.entropies);
      if (!onset) throw ConvergenceError("no steady-state onset on the supplied grid");
      t0 = grid[*onset];
    }
    const double window = c.window > 0.0 ? c.window : 10.0 * t0;
    traj = entropy_trajectory(QuenchConfig(params, grid, t0, window), c.block_size, c.tol);
    s_static = block_entropy(c.block_size, Chain(params), c.tol);
    dt = grid.size() > 1 ? grid[1] - grid[0] : 0.0;
  }
  const std::vector<std::string> cols = {"t", "S"};
  CsvTable table(cols);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    rows.push_back({traj.times[i], traj.entropies[i]});
    table.add_row(rows.back());
  }
  emit_table(c, table, cols, rows, files.primary());
  json body;
  body["t0"] = traj.t0;
  body["T"] = traj.window;
  body["S_bar"] = traj.mean;
  body["S_static"] = s_static;
  body["time_step"] = dt;
  if (traj.eps0_bar) {
    const Epsilon0Bar e = epsilon0_bar_analytic(params);
    body["eps0_bar"] = e.quadrature;
    body["eps0_bar_closed_form"] = e.closed_form;
    body["S_of_eps0_bar"] = binary_entropy_eps(e.quadrature);
  }
  emit_summary(c, body, files.summary());
  return kExitOk;
}

int run_fit(const RunConfig& c, OutputFiles& files) {
  if (c.input.empty()) throw DomainError("fit requires --input <entropy-scan CSV>");
  std::ifstream in(c.input, std::ios::binary);
  if (!in) throw DomainError("cannot open input file " + c.input);
  const CsvData data = read_csv(in);
  const std::size_t im = data.column("M"), ia = data.column("alpha"), iz = data.column("Z"),
                    ih = data.column("h"), is = data.column("S");
  std::map<std::pair<int, double>, ScanResult> groups;
  for (const auto& row : data.rows) {
    const int m = parse_int(row[im]);
    const double a = parse_real(row[ia]);
    ScanResult& g = groups[{m, a}];
    g.block_size = m;
    g.alpha = a;
    g.field = parse_real(row[ih]);
    g.samples.push_back({parse_int(row[iz]), parse_real(row[is])});
  }
  std::vector<ScanResult> scans;
  for (auto& [key, g] : groups) {
    g.fit_z_max = c.fit_z_max > 0 ? c.fit_z_max : default_fit_z_max(g.block_size);
    std::sort(g.samples.begin(), g.samples.end(),
              [](const ScanSample& a, const ScanSample& b) { return a.coordination < b.coordination; });
    std::vector<ScanSample> window;
    for (const auto& s : g.samples) {
      if (s.coordination < g.fit_z_max) window.push_back(s);
    }
    try {
      g.fit = fit_power_law(window);
    } catch (const FitError& e) {
      g.fit_failure = e.what();
    }
    scans.push_back(g);
  }
  json body;
  body["fits"] = json::array();
  for (const auto& s : scans) body["fits"].push_back(fit_json(s));
  body["gamma_alpha"] = gamma_alpha_fits(scans);
  emit_summary(c, body, files.primary());
  return kExitOk;
}

int run_validate(const RunConfig& c, OutputFiles& files) {
  if (c.suite != "ed") throw DomainError("unknown validation suite '" + c.suite + "'");
  const std::vector<ValidationRecord> records = run_validation(default_validation_cases());
  json body;
  body["energy_tol"] = kEdEnergyTol;
  body["entropy_tol"] = kEdEntropyTol;
  body["cases"] = json::array();
  bool ok = true;
  double worst_e = 0.0, worst_s = 0.0;
  for (const auto& r : records) {
    const bool pass = r.energy_delta() < kEdEnergyTol && r.entropy_delta() < kEdEntropyTol;
    ok = ok && pass;
    worst_e = std::max(worst_e, r.energy_delta());
    worst_s = std::max(worst_s, r.entropy_delta());
    body["cases"].push_back({{"N", r.input.sites},
                             {"alpha", r.input.alpha},
                             {"Z", r.input.coordination},
                             {"h", r.input.field},
                             {"M", r.block_size},
                             {"parity", r.parity},
                             {"E0_ed", r.e0_ed},
                             {"E0_fermion", r.e0_ff},
                             {"S_ed", r.s_ed},
                             {"S_fermion", r.s_ff},
                             {"pass", pass}});
  }
  body["max_energy_delta"] = worst_e;
  body["max_entropy_delta"] = worst_s;
  body["pass"] = ok;
  emit_summary(c, body, files.primary());
  return ok ? kExitOk : kExitValidation;
}

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::dispersion: return "dispersion";
    case Command::correlators: return "correlators";
    case Command::entropy_scan: return "entropy-scan";
    case Command::quench: return "quench";
    case Command::fit: return "fit";
    case Command::validate: return "validate";
  }
  return "unknown";
}

std::vector<double> parse_k_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 4 || (parts[0] != "log" && parts[0] != "lin")) {
    throw DomainError("grid must look like log:a:b:n or lin:a:b:n, got '" + spec + "'");
  }
  const double a = parse_real(parts[1]);
  const double b = parse_real(parts[2]);
  const int n = parse_int(parts[3]);
  if (n < 1) throw DomainError("grid needs at least one point");
  if (!(b >= a)) throw DomainError("grid end must not precede its start");
  std::vector<double> grid(static_cast<std::size_t>(n));
  if (parts[0] == "log") {
    if (!(a > 0.0)) throw DomainError("log grid needs a positive start");
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n; ++i) grid[i] = n == 1 ? a : std::exp(la + (lb - la) * i / (n - 1));
    grid.back() = b;
  } else {
    for (int i = 0; i < n; ++i) grid[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  }
  if (n >= 1) grid.front() = a;
  return grid;
}

std::vector<int> parse_int_list(const std::string& spec) {
  std::vector<int> out;
  const auto parts = split(spec, ':');
  if (parts.size() == 1) {
    for (const auto& p : split(spec, ',')) out.push_back(parse_int(p));
  } else if (parts.size() >= 3) {
    const int lo = parse_int(parts[0]);
    const int hi = parse_int(parts[1]);
    if (lo < 1 || hi < lo) throw DomainError("integer range needs 1 <= lo <= hi");
    if (parts[2] == "geometric" && parts.size() == 3) {
      for (long v = lo; v <= hi; v *= 2) out.push_back(static_cast<int>(v));
      if (out.back() != hi) out.push_back(hi);
    } else if (parts[2] == "geometric" && parts.size() == 4) {
      out = geometric_grid(lo, hi, parse_int(parts[3]));
    } else if (parts.size() == 3) {
      const int step = parse_int(parts[2]);
      if (step < 1) throw DomainError("step must be >= 1");
      for (int v = lo; v <= hi; v += step) out.push_back(v);
    } else {
      throw DomainError("cannot parse integer list '" + spec + "'");
    }
  } else {
    throw DomainError("cannot parse integer list '" + spec + "'");
  }
  if (out.empty()) throw DomainError("empty integer list");
  return out;
}

std::vector<double> parse_real_list(const std::string& spec) {
  std::vector<double> out;
  const auto parts = split(spec, ':');
  if (parts.size() == 1) {
    for (const auto& p : split(spec, ',')) out.push_back(parse_real(p));
  } else if (parts.size() == 3) {
    const double a = parse_real(parts[0]);
    const double b = parse_real(parts[1]);
    const double step = parse_real(parts[2]);
    if (!(step > 0.0) || b < a) throw DomainError("range needs a <= b and step > 0");
    const auto n = static_cast<int>(std::floor((b - a) / step + 1e-9)) + 1;
    // snap to 12 significant digits so that 1.1:2.4:0.1 yields 1.1, 1.2, ...
    for (int i = 0; i < n; ++i) {
      const double v = a + step * i;
      const double scale = std::pow(10.0, 11 - std::floor(std::log10(std::max(std::abs(v), 1e-300))));
      out.push_back(v == 0.0 ? 0.0 : std::round(v * scale) / scale);
    }
  } else {
    throw DomainError("cannot parse real list '" + spec + "'");
  }
  if (out.empty()) throw DomainError("empty list");
  return out;
}

ConfigEcho resolved_echo(const RunConfig& c) {
  ConfigEcho e;
  e["command"] = command_name(c.command);
  e["alpha"] = format_double(c.alpha);
  e["Z"] = std::to_string(c.coordination);
  e["h"] = format_double(c.field);
  e["M"] = std::to_string(c.block_size);
  e["alphas"] = c.alphas.empty() ? format_double(c.alpha) : join_reals(parse_real_list(c.alphas));
  e["z_list"] = c.z_list.empty() ? std::to_string(c.coordination) : join_ints(parse_int_list(c.z_list));
  e["block_sizes"] =
      c.block_sizes.empty() ? std::to_string(c.block_size) : join_ints(parse_int_list(c.block_sizes));
  e["k_grid"] = c.k_grid;
  e["r_max"] = std::to_string(c.r_max);
  e["times"] = c.times.empty() ? "auto" : c.times;
  e["t0"] = c.t0 < 0.0 ? "auto" : format_double(c.t0);
  e["window"] = c.window <= 0.0 ? "auto" : format_double(c.window);
  e["tol"] = format_double(c.tol);
  e["fit_z_max"] = c.fit_z_max > 0 ? std::to_string(c.fit_z_max) : "auto";
  e["input"] = c.input;
  e["suite"] = c.suite;
  e["format"] = c.format == OutputFormat::csv ? "csv" : "json";
  e["seed"] = std::to_string(c.seed);
  return e;
}

std::vector<std::string> config_file_tokens(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) throw DomainError(path + ":" + std::to_string(lineno) + ": empty key");
    tokens.push_back("--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (!(c.tol > 0.0)) throw DomainError("tol must be > 0");
    resolved_echo(c);  // validates every list spec up front
    OutputFiles files(c, out);
    switch (c.command) {
      case Command::dispersion: return run_dispersion(c, files);
      case Command::correlators: return run_correlators(c, files);
      case Command::entropy_scan: return run_entropy_scan(c, files);
      case Command::quench: return run_quench_command(c, files);
      case Command::fit: return run_fit(c, files);
      case Command::validate: return run_validate(c, files);
    }
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  }
  return kExitConfig;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  // Config-file entries go first so that explicit flags, parsed later, win.
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (!config_path.empty()) {
    try {
      const auto tokens = config_file_tokens(config_path);
      const auto at = args.empty() ? args.end() : args.begin() + 1;
      args.insert(at, tokens.begin(), tokens.end());
    } catch (const std::exception& e) {
      err << "config error: " << e.what() << '\n';
      return kExitConfig;
    }
  }

  RunConfig c;
  CLI::App app{"Thermodynamic-limit lab for the variable-range extended Ising chain"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  std::string format = "csv";
  auto add_common = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "print help");
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--config", config_path, "key = value file; flags override");
    sub->add_option("--alpha", c.alpha, "power-law exponent (> 1)");
    sub->add_option("--Z,--z", c.coordination, "coordination number");
    sub->add_option("--h", c.field, "transverse field");
    sub->add_option("--M,--m", c.block_size, "block size");
    sub->add_option("--tol", c.tol, "absolute quadrature tolerance");
    sub->add_option("--output,-o", c.output, "output path (default stdout)");
    sub->add_option("--summary", c.summary, "sidecar JSON path (default <output>.json)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", c.seed, "accepted for forward compatibility, unused");
  };
  auto* disp = app.add_subcommand("dispersion", "omega_k on a momentum grid");
  add_common(disp);
  disp->add_option("--k-grid", c.k_grid, "log:a:b:n or lin:a:b:n");
  auto* corr = app.add_subcommand("correlators", "alpha_r, beta_r for r = 0..r_max");
  add_common(corr);
  corr->add_option("--r-max", c.r_max, "largest distance");
  auto* scan = app.add_subcommand("entropy-scan", "block entropy against Z with power-law fits");
  add_common(scan);
  scan->add_option("--alphas", c.alphas, "alpha sweep");
  scan->add_option("--z-list", c.z_list, "Z sweep, e.g. 2:8192:geometric");
  scan->add_option("--block-sizes", c.block_sizes, "M sweep");
  scan->add_option("--fit-z-max", c.fit_z_max, "fit only Z below this value");
  auto* quench = app.add_subcommand("quench", "entropy after a sudden quench from h = infinity");
  add_common(quench);
  quench->add_option("--times", c.times, "explicit time grid lin:0:t:n (default automatic)");
  quench->add_option("--t0", c.t0, "steady-state onset (default detected)");
  quench->add_option("--window", c.window, "averaging span (default 10 t0)");
  auto* fit = app.add_subcommand("fit", "refit an entropy-scan CSV");
  add_common(fit);
  fit->add_option("--input", c.input, "entropy-scan CSV")->required();
  fit->add_option("--fit-z-max", c.fit_z_max, "fit only Z below this value");
  auto* val = app.add_subcommand("validate", "finite-chain exact-diagonalization suite");
  add_common(val);
  val->add_option("--suite", c.suite, "validation suite (ed)");

  // CLI11 consumes the argument vector in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }
  c.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (disp->parsed()) c.command = Command::dispersion;
  if (corr->parsed()) c.command = Command::correlators;
  if (scan->parsed()) c.command = Command::entropy_scan;
  if (quench->parsed()) c.command = Command::quench;
  if (fit->parsed()) c.command = Command::fit;
  if (val->parsed()) c.command = Command::validate;
  return run(c, out, err);
}

}  // namespace vrei
