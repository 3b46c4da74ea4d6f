#include "wls/cli.hpp"

#include "wls/io.hpp"
#include "wls/metrics.hpp"
#include "wls/screening.hpp"
#include "wls/simgen.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

namespace wls {

int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UsageError:
    case ErrorKind::InvalidSliceCount:
    case ErrorKind::InvalidRank:
      return kExitUsage;
    case ErrorKind::NumericalFailure:
    case ErrorKind::InvalidSpectrum:
    case ErrorKind::DegenerateScores:
      return kExitNumerical;
    default:
      return kExitData;
  }
}

namespace {

[[noreturn]] void usage(const std::string& message) {
  throw Error(ErrorKind::UsageError, message);
}

void parse_d_mode(const std::string& text, ScreenConfig& config) {
  if (text == "auto") {
    config.d_mode = SpikeMode::Auto;
  } else if (text == "full") {
    config.d_mode = SpikeMode::Full;
  } else if (text.starts_with("fixed:")) {
    const std::string_view k = std::string_view(text).substr(6);
    Index d = 0;
    const auto [end, ec] = std::from_chars(k.data(), k.data() + k.size(), d);
    if (ec != std::errc{} || end != k.data() + k.size() || d < 1) {
      usage("--d-mode fixed:k needs a positive integer k, got '" + text + "'");
    }
    config.d_mode = SpikeMode::Fixed;
    config.fixed_d = d;
  } else {
    usage("--d-mode must be auto, full or fixed:k, got '" + text + "'");
  }
}

ScreenConfig screen_config(const RunConfig& run) {
  if (!(run.c_n1 > 0.0)) usage("--c-n1 must be positive");
  if (!(run.c_n2 > 0.0)) usage("--c-n2 must be positive");
  if (run.slices && *run.slices < 2) usage("--slices must be at least 2");
  if (run.top_k && *run.top_k < 1) usage("--top-k must be at least 1");
  ScreenConfig config;
  config.slices = run.slices;
  config.c_n1 = run.c_n1;
  config.c_n2 = run.c_n2;
  config.top_k = run.top_k;
  if (run.d_mode) parse_d_mode(*run.d_mode, config);
  return config;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) usage("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool has_inline_scenario(const RunConfig& run) {
  return run.setting || run.n || run.p || run.sigma || run.rho || run.model || run.profile ||
         run.rotation || !run.true_set.empty() || !run.spikes.empty();
}

// Builds the scenario as scenario text: the base first, then one line per
// override, since later keys win.
ScenarioConfig resolve_scenario(const RunConfig& run) {
  if (!run.scenario.empty() && !run.scenario_file.empty()) {
    usage("--scenario and --scenario-file are mutually exclusive");
  }
  std::ostringstream text;
  text.precision(17);
  if (!run.scenario.empty()) {
    text << to_text(find_scenario(run.scenario));
  } else if (!run.scenario_file.empty()) {
    text << read_file(run.scenario_file) << '\n';
  } else if (has_inline_scenario(run)) {
    text << "id = custom\n";
  } else {
    usage("a scenario is required: --scenario ID, --scenario-file PATH or inline "
          "parameters (--setting, --n, --p, --true-set, ...)");
  }
  if (run.setting) text << "setting = " << *run.setting << '\n';
  if (run.n) text << "n = " << *run.n << '\n';
  if (run.p) text << "p = " << *run.p << '\n';
  if (run.sigma) text << "sigma = " << *run.sigma << '\n';
  if (run.rho) text << "rho = " << *run.rho << '\n';
  if (run.model) text << "model = " << *run.model << '\n';
  if (!run.spikes.empty()) {
    text << "spike_profile = custom\ncustom_spikes = ";
    for (std::size_t i = 0; i < run.spikes.size(); ++i) text << (i ? "," : "") << run.spikes[i];
    text << '\n';
  }
  if (run.profile) text << "spike_profile = " << *run.profile << '\n';
  if (run.rotation) text << "v_mode = " << *run.rotation << '\n';
  if (!run.true_set.empty()) {
    text << "true_set = ";
    for (std::size_t i = 0; i < run.true_set.size(); ++i) text << (i ? "," : "") << run.true_set[i];
    text << '\n';
  }
  if (run.replicates) text << "replicates = " << *run.replicates << '\n';
  if (run.seed) text << "seed = " << *run.seed << '\n';
  try {
    return scenario_from_text(text.str());
  } catch (const Error& e) {
    usage(std::string("invalid scenario: ") + e.what());
  }
}

// Writes to --output when given, otherwise to `out`.
void emit(const RunConfig& run, std::ostream& out, const std::string& content) {
  if (run.output.empty()) {
    out << content;
    return;
  }
  std::ofstream file(run.output, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot write '" + run.output + "'");
  file << content;
  if (!file) throw Error(ErrorKind::InvalidInput, "write to '" + run.output + "' failed");
}

}  // namespace

int cmd_screen(const RunConfig& run, std::ostream& out, std::ostream& err) {
  if (run.input.empty()) usage("screen requires --input");
  if (run.response.empty()) usage("screen requires --response");
  const ScreenConfig config = screen_config(run);
  const CsvDataset data = read_csv(run.input, run.response);
  const ScreeningResult result = screen(data.x, data.y, config);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  switch (run.format) {
    case OutputFormat::Json:
      emit(run, out, screening_json(result, data.predictor_names, config, data.x.n()));
      break;
    case OutputFormat::Csv:
      emit(run, out, screening_csv(result, data.predictor_names));
      break;
    case OutputFormat::Table:
      emit(run, out, screening_table(result, data.predictor_names));
      break;
  }
  return kExitOk;
}

int cmd_simulate(const RunConfig& run, std::ostream& out, std::ostream&) {
  const ScenarioConfig scenario = resolve_scenario(run);
  const Dataset data = generate(scenario, run.replicate);
  std::ostringstream csv;
  write_dataset_csv(csv, data);
  emit(run, out, csv.str());
  return kExitOk;
}

int cmd_bench(const RunConfig& run, std::ostream& out, std::ostream& err) {
  const ScenarioConfig scenario = resolve_scenario(run);
  BenchOptions options;
  options.methods.clear();
  for (const auto& name : run.methods) options.methods.push_back(parse_method(name));
  if (options.methods.empty()) usage("--methods needs at least one method");
  options.screen = screen_config(run);
  if (run.d_mode) options.d_mode = options.screen.d_mode;
  if (run.threads < 0) usage("--threads must be non-negative");
  options.threads = run.threads;

  const ScenarioRun result = run_scenario(scenario, options);
  for (const auto& f : result.failures) err << "replicate failed: " << f << '\n';
  switch (run.format) {
    case OutputFormat::Json: emit(run, out, report_json(result.report, scenario)); break;
    case OutputFormat::Csv: emit(run, out, report_csv(result.report)); break;
    case OutputFormat::Table: emit(run, out, report_table(result.report)); break;
  }
  return kExitOk;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    switch (config.command) {
      case Command::Screen: return cmd_screen(config, out, err);
      case Command::Simulate: return cmd_simulate(config, out, err);
      case Command::Bench: return cmd_bench(config, out, err);
    }
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weighted leverage score variable screening", "wls"};
  app.set_config("--config", "", "Read options from an INI/TOML file (keys as long flag names)");
  app.require_subcommand(1);

  RunConfig config;
  std::map<std::string, OutputFormat> formats{
      {"table", OutputFormat::Table}, {"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}};

  auto add_screen_options = [&](CLI::App* cmd) {
    cmd->add_option("--slices,-H", config.slices, "Number of slices h (default 10, or n/10 below 100 samples)");
    cmd->add_option("--c-n1", config.c_n1, "Spike-count penalty constant")->capture_default_str();
    cmd->add_option("--c-n2", config.c_n2, "Model-size penalty constant")->capture_default_str();
    cmd->add_option("--d-mode", config.d_mode, "auto | full | fixed:k");
    cmd->add_option("--top-k", config.top_k, "Keep the k top-ranked predictors instead of G(r)");
    cmd->add_option("--output,-o", config.output, "Write the result to this file");
    cmd->add_option("--format", config.format, "table | csv | json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""));
  };
  auto add_scenario_options = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", config.scenario, "Catalog scenario id, e.g. 1.6");
    cmd->add_option("--scenario-file", config.scenario_file, "Scenario in key = value form");
    cmd->add_option("--setting", config.setting, "spiked | ar1");
    cmd->add_option("--n", config.n, "Sample size");
    cmd->add_option("--p", config.p, "Number of predictors");
    cmd->add_option("--sigma", config.sigma, "Noise scale");
    cmd->add_option("--rho", config.rho, "AR(1) correlation");
    cmd->add_option("--model", config.model, "linear | index_ratio | hetero");
    cmd->add_option("--profile", config.profile, "none | example1 | example2 | example3 | custom");
    cmd->add_option("--rotation", config.rotation, "haar | identity");
    cmd->add_option("--true-set", config.true_set, "Six 1-based true predictor columns")
        ->delimiter(',');
    cmd->add_option("--spikes", config.spikes, "Custom leading scale entries")->delimiter(',');
    cmd->add_option("--seed", config.seed, "Base seed (default: $WLS_SEED, else the scenario's)")
        ->envname("WLS_SEED");
    cmd->add_option("--replicates", config.replicates, "Number of replicates");
  };

  CLI::App* screen_cmd = app.add_subcommand("screen", "Screen the predictors of a CSV dataset");
  screen_cmd->add_option("--input,-i", config.input, "CSV file, samples as rows, with header")
      ->required();
  screen_cmd->add_option("--response,-r", config.response, "Response column name or 0-based index")
      ->required();
  add_screen_options(screen_cmd);

  CLI::App* simulate_cmd = app.add_subcommand("simulate", "Write one simulated dataset as CSV");
  add_scenario_options(simulate_cmd);
  simulate_cmd->add_option("--replicate", config.replicate, "Replicate index")
      ->capture_default_str();
  simulate_cmd->add_option("--output,-o", config.output, "Write the CSV to this file");

  CLI::App* bench_cmd = app.add_subcommand("bench", "Monte Carlo comparison over replicates");
  add_scenario_options(bench_cmd);
  add_screen_options(bench_cmd);
  bench_cmd->add_option("--methods", config.methods, "Comma list of wls, sis, dcsis, sirs")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--threads", config.threads, "Worker threads (0: all cores)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out, cli_err;
    const int status = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return status == 0 ? kExitOk : kExitUsage;
  }

  if (screen_cmd->parsed()) config.command = Command::Screen;
  else if (simulate_cmd->parsed()) config.command = Command::Simulate;
  else config.command = Command::Bench;
  return run(config, out, err);
}

}  // namespace wls
