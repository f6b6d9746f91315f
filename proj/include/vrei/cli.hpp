#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vrei/format.hpp"

namespace vrei {

enum class Command { dispersion, correlators, entropy_scan, quench, fit, validate };
enum class OutputFormat { csv, json };

std::string command_name(Command c);

struct RunConfig {
  Command command = Command::dispersion;
  double alpha = 1.5;
  int coordination = 1;
  double field = 2.0;
  int block_size = 1;
  std::string alphas;       // sweep, "1.1,1.5" or "1.1:2.4:0.1"; empty = alpha
  std::string z_list;       // sweep, "2:8192:geometric[:n]" or "1,4,32"; empty = Z
  std::string block_sizes;  // sweep, "1,4"; empty = M
  std::string k_grid = "log:1e-4:pi:200";
  int r_max = 100;
  std::string times;        // quench grid, empty = automatic
  double t0 = -1.0;         // quench onset, < 0 = detect
  double window = -1.0;     // quench averaging span, < 0 = 10 t0
  double tol = 1e-10;
  int fit_z_max = 0;        // 0 = per-M default
  std::string input;        // fit: entropy-scan CSV
  std::string suite = "ed";
  std::string output;       // empty = stdout
  std::string summary;      // sidecar JSON, empty = <output>.json (or stdout)
  OutputFormat format = OutputFormat::csv;
  std::uint64_t seed = 0;   // accepted and echoed, never used
};

// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitConvergence = 2;
inline constexpr int kExitValidation = 3;

// "log:a:b:n" or "lin:a:b:n"; a, b accept "pi" and "<x>pi".
std::vector<double> parse_k_grid(const std::string& spec);
// "lo:hi:geometric" doubles from lo (hi appended), "lo:hi:geometric:n" n log-spaced
// integers, "lo:hi:step" arithmetic, or a comma list.
std::vector<int> parse_int_list(const std::string& spec);
// "a:b:step" or a comma list.
std::vector<double> parse_real_list(const std::string& spec);

// Every resolved parameter, defaults included, as strings.
ConfigEcho resolved_echo(const RunConfig& config);

// Reads "key = value" lines ('#' starts a comment) into "--key value" tokens.
std::vector<std::string> config_file_tokens(const std::string& path);

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (subcommand first, flags override --config file entries) and runs.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vrei
