#pragma once

#include "wls/error.hpp"
#include "wls/matrix_spectrum.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wls {

enum class Command { Screen, Simulate, Bench };
enum class OutputFormat { Table, Csv, Json };

/// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumerical = 4;

int exit_code(ErrorKind kind) noexcept;

/// Everything one CLI invocation needs. Scenario fields left unset keep the
/// values of the base scenario (catalog id or scenario file).
struct RunConfig {
  Command command = Command::Screen;

  // screen
  std::string input;
  std::string response;

  // simulate / bench: base scenario plus inline overrides
  std::string scenario;
  std::string scenario_file;
  std::optional<std::string> setting;
  std::optional<Index> n;
  std::optional<Index> p;
  std::optional<double> sigma;
  std::optional<double> rho;
  std::optional<std::string> model;
  std::optional<std::string> profile;
  std::optional<std::string> rotation;
  std::vector<Index> true_set;      // 1-based, as typed
  std::vector<double> spikes;       // custom spike profile
  std::optional<std::uint64_t> seed;
  std::optional<Index> replicates;
  std::uint64_t replicate = 0;      // simulate: which replicate to write
  std::vector<std::string> methods{"wls"};
  int threads = 0;

  // screening parameters
  std::optional<Index> slices;
  double c_n1 = 0.002;
  double c_n2 = 1.0;
  std::optional<std::string> d_mode;  // auto | full | fixed:k
  std::optional<Index> top_k;

  std::string output;  // empty: standard output
  OutputFormat format = OutputFormat::Table;
};

int cmd_screen(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.command and maps errors onto exit codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (flags, --config file, WLS_SEED) and runs the command.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wls
