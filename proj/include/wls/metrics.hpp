#pragma once

#include "wls/screening.hpp"
#include "wls/simgen.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wls {

struct FpFn {
  Index fp = 0;
  Index fn = 0;
};

/// fp = |selected \ truth|, fn = |truth \ selected|.
FpFn fp_fn(std::span<const Index> selected, std::span<const Index> true_set, Index p);

/// Smallest ranking prefix that contains every true predictor (1-based
/// position of the worst-ranked true predictor).
Index min_model_size(std::span<const Index> ranking, std::span<const Index> true_set);

enum class Method { Wls, Sis, DcSis, Sirs };

std::string_view to_string(Method method) noexcept;
Method parse_method(std::string_view name);

struct ReplicateOutcome {
  Method method = Method::Wls;
  Index fp = 0;
  Index fn = 0;
  Index m = 0;
  double elapsed = 0.0;  // seconds, screening statistic plus selection
};

struct MetricSummary {
  double mean = 0.0;
  double sd = 0.0;
};

/// Mean and n-1 standard deviation (0 for a single value), two-pass.
MetricSummary summarize(std::span<const double> values);

struct MethodSummary {
  Method method = Method::Wls;
  Index replicates = 0;  // successful ones
  Index failures = 0;
  MetricSummary fp, fn, m, time;
};

struct ScenarioReport {
  std::string scenario;
  std::vector<MethodSummary> methods;
};

struct BenchOptions {
  std::vector<Method> methods{Method::Wls};
  ScreenConfig screen;
  // Spike mode for WLS. Unset: auto on spiked designs, full on AR(1) ones.
  std::optional<SpikeMode> d_mode;
  int threads = 0;  // 0 = OpenMP default
};

struct ScenarioRun {
  ScenarioReport report;
  // outcomes[method][replicate]; empty optional for a failed replicate.
  std::vector<std::vector<std::optional<ReplicateOutcome>>> outcomes;
  std::vector<std::string> failures;
};

/// Generates every replicate, screens it with each method and aggregates.
/// Replicates run in parallel; reduction is in replicate order, so results do
/// not depend on the thread count (timings aside).
ScenarioRun run_scenario(const ScenarioConfig& config, const BenchOptions& options);

/// Delimiter-separated form, one row per method, 17 significant digits.
std::string report_csv(const ScenarioReport& report);

/// Aligned "mean (sd)" table.
std::string report_table(const ScenarioReport& report);

/// Inverse of report_csv.
ScenarioReport parse_report_csv(std::string_view text);

}  // namespace wls
