#include "wls/io.hpp"

#include "wls/error.hpp"
#include "wls/metrics.hpp"
#include "wls/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace wls {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Strict decimal parse: the whole (trimmed) cell must be a finite number.
bool parse_number(std::string_view cell, double& value) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return false;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  return ec == std::errc{} && end == cell.data() + cell.size() && std::isfinite(value);
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::vector<std::string>> records;
  std::vector<Index> lines;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_quoted = false;
  bool record_open = false;
  Index line = 1;
  Index record_line = 1;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    // A lone empty field is a blank line, not a record.
    if (!(record.size() == 1 && record.front().empty())) {
      records.push_back(std::move(record));
      lines.push_back(record_line);
    }
    record.clear();
    record_open = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!record_open) {
      record_open = true;
      record_line = line;
    }
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_quoted) {
          throw Error(ErrorKind::FormatError,
                      "stray quote on line " + std::to_string(line));
        }
        in_quotes = true;
        field_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') break;
        field += c;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        if (field_quoted) {
          throw Error(ErrorKind::FormatError,
                      "text after closing quote on line " + std::to_string(line));
        }
        field += c;
    }
  }
  if (in_quotes) {
    throw Error(ErrorKind::FormatError,
                "unterminated quoted field starting on line " + std::to_string(record_line));
  }
  if (record_open) end_record();

  if (records.empty()) throw Error(ErrorKind::FormatError, "CSV input has no header row");
  CsvTable table;
  table.header = std::move(records.front());
  for (auto& name : table.header) name = std::string(trim(name));
  const std::size_t width = table.header.size();
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      throw Error(ErrorKind::FormatError,
                  "row " + std::to_string(r) + " (line " + std::to_string(lines[r]) + ") has " +
                      std::to_string(records[r].size()) + " fields, header has " +
                      std::to_string(width));
    }
    table.rows.push_back(std::move(records[r]));
    table.row_lines.push_back(lines[r]);
  }
  return table;
}

CsvDataset dataset_from_csv(const CsvTable& table, std::string_view response_column) {
  const auto width = static_cast<Index>(table.header.size());
  Index response = -1;
  const auto named = std::find(table.header.begin(), table.header.end(), response_column);
  if (named != table.header.end()) {
    response = named - table.header.begin();
  } else {
    Index idx = -1;
    const auto [end, ec] = std::from_chars(
        response_column.data(), response_column.data() + response_column.size(), idx);
    if (ec == std::errc{} && end == response_column.data() + response_column.size() &&
        idx >= 0 && idx < width) {
      response = idx;
    }
  }
  if (response < 0) {
    throw Error(ErrorKind::ColumnNotFound,
                "response column '" + std::string(response_column) +
                    "' is neither a header name nor a column index below " +
                    std::to_string(width));
  }
  if (width < 2) {
    throw Error(ErrorKind::FormatError, "CSV needs a response and at least one predictor");
  }
  const auto n = static_cast<Index>(table.rows.size());
  if (n < 2) {
    throw Error(ErrorKind::TooFewSamples,
                "CSV has " + std::to_string(n) + " data rows, at least 2 are required");
  }

  CsvDataset out;
  out.response_name = table.header[static_cast<std::size_t>(response)];
  for (Index c = 0; c < width; ++c) {
    if (c != response) out.predictor_names.push_back(table.header[static_cast<std::size_t>(c)]);
  }

  Eigen::MatrixXd raw(n, width - 1);
  std::vector<double> numeric(static_cast<std::size_t>(n));
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  bool response_numeric = true;
  for (Index i = 0; i < n; ++i) {
    const auto& row = table.rows[static_cast<std::size_t>(i)];
    Index col = 0;
    for (Index c = 0; c < width; ++c) {
      const std::string& cell = row[static_cast<std::size_t>(c)];
      if (c == response) {
        labels[static_cast<std::size_t>(i)] = std::string(trim(cell));
        if (response_numeric) {
          response_numeric = parse_number(cell, numeric[static_cast<std::size_t>(i)]);
        }
        continue;
      }
      double value = 0.0;
      if (!parse_number(cell, value)) {
        throw Error(ErrorKind::ParseError,
                    "row " + std::to_string(i + 1) + " (line " +
                        std::to_string(table.row_lines[static_cast<std::size_t>(i)]) +
                        "), column '" + table.header[static_cast<std::size_t>(c)] +
                        "': not a finite number: '" + cell + "'");
      }
      raw(i, col++) = value;
    }
  }
  out.x = make_design(std::move(raw));
  out.y = response_numeric ? ResponseVector::continuous(std::move(numeric))
                           : ResponseVector::discrete(labels);
  return out;
}

CsvDataset read_csv(const std::string& path, std::string_view response_column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return dataset_from_csv(parse_csv(buffer.str()), response_column);
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  const Eigen::MatrixXd& x = data.x.values;
  out << 'y';
  for (Index j = 0; j < x.cols(); ++j) out << ",x" << (j + 1);
  out << '\n';
  const bool discrete = data.y.kind == ResponseKind::Discrete;
  for (Index i = 0; i < x.rows(); ++i) {
    const double yi = data.y.values[static_cast<std::size_t>(i)];
    if (discrete) {
      out << data.y.levels[static_cast<std::size_t>(yi)];
    } else {
      out << format_double(yi);
    }
    for (Index j = 0; j < x.cols(); ++j) out << ',' << format_double(x(i, j));
    out << '\n';
  }
}

namespace {

std::string spike_mode_name(SpikeMode mode) {
  switch (mode) {
    case SpikeMode::Auto: return "auto";
    case SpikeMode::Full: return "full";
    case SpikeMode::Fixed: return "fixed";
  }
  return "?";
}

const std::string& name_of(const std::vector<std::string>& names, Index j) {
  return names.at(static_cast<std::size_t>(j));
}

}  // namespace

std::string screening_json(const ScreeningResult& result, const std::vector<std::string>& names,
                           const ScreenConfig& config, Index n) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["schema_version"] = kJsonSchemaVersion;
  doc["n"] = n;
  doc["p"] = result.scores.size();
  doc["slices"] = result.slice_count;
  doc["spike_mode"] = spike_mode_name(result.spikes.mode);
  doc["d_hat"] = result.d_hat;
  doc["d_selected"] = result.spikes.d_hat;
  doc["p0_hat"] = result.p0_hat;
  doc["top_k_override"] = config.top_k.has_value();

  json selected = json::array();
  for (Index j : result.selected) selected.push_back(name_of(names, j));
  doc["selected"] = std::move(selected);

  json ranking = json::array();
  for (std::size_t r = 0; r < result.ranking.size(); ++r) {
    const Index j = result.ranking[r];
    ranking.push_back({{"rank", r + 1},
                       {"name", name_of(names, j)},
                       {"column", j + 1},
                       {"score", result.scores[j]}});
  }
  doc["ranking"] = std::move(ranking);
  doc["d_trace"] = result.spikes.criterion_trace;
  doc["g_trace"] = result.g_trace;
  doc["warnings"] = result.warnings;

  json cfg;
  cfg["slices"] = config.slices ? json(*config.slices) : json(nullptr);
  cfg["c_n1"] = config.c_n1;
  cfg["c_n2"] = config.c_n2;
  cfg["d_mode"] = config.d_mode == SpikeMode::Fixed
                      ? "fixed:" + std::to_string(config.fixed_d)
                      : spike_mode_name(config.d_mode);
  cfg["top_k"] = config.top_k ? json(*config.top_k) : json(nullptr);
  doc["config"] = std::move(cfg);
  return doc.dump(2) + "\n";
}

std::string screening_table(const ScreeningResult& result,
                            const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "slices: " << result.slice_count << "\n"
      << "d_hat: " << result.d_hat << " (" << spike_mode_name(result.spikes.mode) << ")\n"
      << "p0_hat: " << result.p0_hat << "\n"
      << "selected:";
  for (Index j : result.selected) out << ' ' << name_of(names, j);
  out << "\n";
  for (const auto& w : result.warnings) out << "warning: " << w << "\n";

  std::size_t width = 9;
  for (const auto& name : names) width = std::max(width, name.size());
  out << "\n" << "rank  ";
  out.width(static_cast<std::streamsize>(width));
  out << std::left << "predictor" << "  score\n";
  for (std::size_t r = 0; r < result.ranking.size(); ++r) {
    const Index j = result.ranking[r];
    char rank[16];
    std::snprintf(rank, sizeof rank, "%-4zu  ", r + 1);
    out << rank;
    out.width(static_cast<std::streamsize>(width));
    char score[32];
    std::snprintf(score, sizeof score, "%.6e", result.scores[j]);
    out << std::left << name_of(names, j) << "  " << score << "\n";
  }
  return out.str();
}

std::string screening_csv(const ScreeningResult& result,
                          const std::vector<std::string>& names) {
  std::vector<char> chosen(static_cast<std::size_t>(result.scores.size()), 0);
  for (Index j : result.selected) chosen[static_cast<std::size_t>(j)] = 1;
  std::string out = "rank,predictor,column,score,selected\n";
  for (std::size_t r = 0; r < result.ranking.size(); ++r) {
    const Index j = result.ranking[r];
    std::string name = name_of(names, j);
    if (name.find_first_of(",\"\n\r") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : name) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
      name = quoted + "\"";
    }
    out += std::to_string(r + 1) + "," + name + "," + std::to_string(j + 1) + "," +
           format_double(result.scores[j]) + "," + (chosen[static_cast<std::size_t>(j)] ? "1" : "0") +
           "\n";
  }
  return out;
}

std::string report_json(const ScenarioReport& report, const ScenarioConfig& config) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["schema_version"] = kJsonSchemaVersion;
  doc["scenario"] = report.scenario;
  doc["n"] = config.n;
  doc["p"] = config.p;
  doc["replicates"] = config.replicates;
  doc["seed"] = config.seed;
  doc["rng"] = kRngVersion;
  json methods = json::array();
  for (const auto& m : report.methods) {
    auto metric = [](const MetricSummary& s) { return json{{"mean", s.mean}, {"sd", s.sd}}; };
    methods.push_back({{"method", std::string(to_string(m.method))},
                       {"replicates", m.replicates},
                       {"failures", m.failures},
                       {"fp", metric(m.fp)},
                       {"fn", metric(m.fn)},
                       {"m", metric(m.m)},
                       {"time", metric(m.time)}});
  }
  doc["methods"] = std::move(methods);
  return doc.dump(2) + "\n";
}

}  // namespace wls
