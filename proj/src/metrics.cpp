#include "wls/metrics.hpp"

#include "wls/baselines.hpp"
#include "wls/error.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace wls {

FpFn fp_fn(std::span<const Index> selected, std::span<const Index> true_set, Index p) {
  std::vector<char> chosen(static_cast<std::size_t>(p), 0);
  for (Index j : selected) {
    if (j < 0 || j >= p) throw Error(ErrorKind::InvalidInput, "selected index out of range");
    chosen[static_cast<std::size_t>(j)] = 1;
  }
  const auto picked = static_cast<Index>(std::count(chosen.begin(), chosen.end(), 1));
  Index hits = 0;
  for (Index t : true_set) {
    if (t >= 0 && t < p && chosen[static_cast<std::size_t>(t)]) ++hits;
  }
  return {picked - hits, static_cast<Index>(true_set.size()) - hits};
}

Index min_model_size(std::span<const Index> ranking, std::span<const Index> true_set) {
  std::vector<Index> position(ranking.size(), -1);
  for (std::size_t r = 0; r < ranking.size(); ++r) {
    position[static_cast<std::size_t>(ranking[r])] = static_cast<Index>(r);
  }
  Index worst = 0;
  for (Index t : true_set) {
    const Index pos = position.at(static_cast<std::size_t>(t));
    if (pos < 0) throw Error(ErrorKind::InvalidInput, "ranking is not a permutation");
    worst = std::max(worst, pos + 1);
  }
  return worst;
}

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::Wls: return "WLS";
    case Method::Sis: return "SIS";
    case Method::DcSis: return "DC-SIS";
    case Method::Sirs: return "SIRS";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  lower.erase(std::remove(lower.begin(), lower.end(), '-'), lower.end());
  if (lower == "wls") return Method::Wls;
  if (lower == "sis") return Method::Sis;
  if (lower == "dcsis" || lower == "dcor") return Method::DcSis;
  if (lower == "sirs") return Method::Sirs;
  throw Error(ErrorKind::UsageError, "unknown method '" + std::string(name) +
                                         "' (expected wls, sis, dcsis or sirs)");
}

MetricSummary summarize(std::span<const double> values) {
  MetricSummary s;
  if (values.empty()) return s;
  double total = 0.0;
  for (double v : values) total += v;
  s.mean = total / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

namespace {

struct Selection {
  std::vector<Index> selected;
  std::vector<Index> ranking;
};

Selection run_method(Method method, const DesignMatrix& x, const ResponseVector& y,
                     const ScreenConfig& config) {
  if (method == Method::Wls) {
    ScreeningResult r = screen(x, y, config);
    return {std::move(r.selected), std::move(r.ranking)};
  }
  BaselineScores b;
  switch (method) {
    case Method::Sis: b = sis_scores(x, y); break;
    case Method::DcSis: b = dcor_scores(x, y); break;
    default: b = sirs_scores(x, y); break;
  }
  Selection s;
  s.selected.assign(b.ranking.begin(), b.ranking.begin() + b.cutoff);
  s.ranking = std::move(b.ranking);
  return s;
}

ReplicateOutcome evaluate(Method method, const Selection& sel,
                          const std::vector<Index>& truth, Index p, double elapsed) {
  const FpFn counts = fp_fn(sel.selected, truth, p);
  const auto picked = static_cast<Index>(sel.selected.size());
  const auto truth_size = static_cast<Index>(truth.size());
  const Index hits = truth_size - counts.fn;
  if (counts.fp + hits != picked || counts.fn + hits != truth_size) {
    throw std::logic_error("fp/fn accounting identity violated");
  }
  ReplicateOutcome out;
  out.method = method;
  out.fp = counts.fp;
  out.fn = counts.fn;
  out.m = min_model_size(sel.ranking, truth);
  if (out.m < truth_size || out.m > p) {
    throw std::logic_error("minimum model size outside [|truth|, p]");
  }
  out.elapsed = elapsed;
  return out;
}

}  // namespace

ScenarioRun run_scenario(const ScenarioConfig& config, const BenchOptions& options) {
  validate(config);
  if (options.methods.empty()) {
    throw Error(ErrorKind::UsageError, "no screening methods requested");
  }
  ScreenConfig screen_config = options.screen;
  screen_config.d_mode = options.d_mode.value_or(
      config.setting == DesignSetting::Spiked ? SpikeMode::Auto : SpikeMode::Full);

  const auto reps = static_cast<std::size_t>(config.replicates);
  const std::size_t method_count = options.methods.size();
  ScenarioRun run;
  run.outcomes.assign(method_count,
                      std::vector<std::optional<ReplicateOutcome>>(reps));
  std::vector<std::vector<std::string>> errors(reps);

  const ScenarioSampler sampler(config);
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::size_t r = 0; r < reps; ++r) {
    try {
      Dataset data = sampler.draw(r);
      data.x = center_columns(data.x.values);
      for (std::size_t m = 0; m < method_count; ++m) {
        const Method method = options.methods[m];
        try {
          const auto start = std::chrono::steady_clock::now();
          const Selection sel = run_method(method, data.x, data.y, screen_config);
          const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
          run.outcomes[m][r] = evaluate(method, sel, config.true_set, config.p, took.count());
        } catch (const std::exception& e) {
          errors[r].push_back("replicate " + std::to_string(r) + " " +
                              std::string(to_string(method)) + ": " + e.what());
        }
      }
    } catch (const std::exception& e) {
      errors[r].push_back("replicate " + std::to_string(r) + " generation: " + e.what());
    }
  }

  run.report.scenario = config.id;
  for (std::size_t m = 0; m < method_count; ++m) {
    std::vector<double> fp, fn, mm, time;
    for (const auto& outcome : run.outcomes[m]) {
      if (!outcome) continue;
      fp.push_back(static_cast<double>(outcome->fp));
      fn.push_back(static_cast<double>(outcome->fn));
      mm.push_back(static_cast<double>(outcome->m));
      time.push_back(outcome->elapsed);
    }
    MethodSummary s;
    s.method = options.methods[m];
    s.replicates = static_cast<Index>(fp.size());
    s.failures = static_cast<Index>(reps) - s.replicates;
    s.fp = summarize(fp);
    s.fn = summarize(fn);
    s.m = summarize(mm);
    s.time = summarize(time);
    run.report.methods.push_back(s);
  }
  for (auto& list : errors) {
    for (auto& msg : list) run.failures.push_back(std::move(msg));
  }
  return run;
}

namespace {

constexpr const char* kCsvHeader =
    "scenario,method,replicates,failures,fp_mean,fp_sd,fn_mean,fn_sd,m_mean,m_sd,"
    "time_mean,time_sd";

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string cell(const MetricSummary& s, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f (%.*f)", precision, s.mean, precision, s.sd);
  return buf;
}

}  // namespace

std::string report_csv(const ScenarioReport& report) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& m : report.methods) {
    out += report.scenario + "," + std::string(to_string(m.method)) + "," +
           std::to_string(m.replicates) + "," + std::to_string(m.failures);
    for (const auto* metric : {&m.fp, &m.fn, &m.m, &m.time}) {
      out += "," + exact(metric->mean) + "," + exact(metric->sd);
    }
    out += "\n";
  }
  return out;
}

std::string report_table(const ScenarioReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"Method", "FP", "FN", "M", "Time (s)", "Failed"});
  for (const auto& m : report.methods) {
    rows.push_back({std::string(to_string(m.method)), cell(m.fp, 2), cell(m.fn, 2),
                    cell(m.m, 2), cell(m.time, 3), std::to_string(m.failures)});
  }
  std::vector<std::size_t> width(rows.front().size(), 0);
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }

  std::string out = "Scenario " + report.scenario;
  if (!report.methods.empty()) {
    out += " (" + std::to_string(report.methods.front().replicates +
                                 report.methods.front().failures) +
           " replicates)";
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string text = row[c];
      if (c + 1 < row.size()) text.resize(width[c] + 2, ' ');
      out += text;
    }
    out += "\n";
  }
  return out;
}

ScenarioReport parse_report_csv(std::string_view text) {
  auto next_line = [&text]() {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  };
  if (next_line() != kCsvHeader) {
    throw Error(ErrorKind::FormatError, "report CSV header mismatch");
  }

  ScenarioReport report;
  std::size_t row = 1;
  while (!text.empty()) {
    const std::string_view line = next_line();
    ++row;
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = line;
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 12) {
      throw Error(ErrorKind::FormatError,
                  "report CSV row " + std::to_string(row) + " has " +
                      std::to_string(fields.size()) + " fields, expected 12");
    }
    auto number = [&](std::string_view f, auto& out) {
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), out);
      if (ec != std::errc{} || ptr != f.data() + f.size()) {
        throw Error(ErrorKind::ParseError, "report CSV row " + std::to_string(row) +
                                               ": bad number '" + std::string(f) + "'");
      }
    };
    if (report.methods.empty()) report.scenario = fields[0];
    MethodSummary m;
    m.method = parse_method(fields[1]);
    number(fields[2], m.replicates);
    number(fields[3], m.failures);
    std::size_t f = 4;
    for (auto* metric : {&m.fp, &m.fn, &m.m, &m.time}) {
      number(fields[f++], metric->mean);
      number(fields[f++], metric->sd);
    }
    report.methods.push_back(m);
  }
  return report;
}

}  // namespace wls
