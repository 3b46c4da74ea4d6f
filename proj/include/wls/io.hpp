#pragma once

#include "wls/screening.hpp"
#include "wls/simgen.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace wls {

/// Raw CSV records: the header followed by the data rows, all of equal width.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  // rows[i] starts on physical line row_lines[i] of the file (1-based).
  std::vector<Index> row_lines;
};

/// RFC 4180 reader: comma separated, double-quoted fields may hold commas,
/// line breaks and "" escapes; LF and CRLF line endings; a leading UTF-8 BOM
/// is skipped. Ragged rows and unterminated quotes throw FormatError.
CsvTable parse_csv(std::string_view text);

/// A dataset read from disk, predictors in file column order.
struct CsvDataset {
  DesignMatrix x;
  ResponseVector y;
  std::vector<std::string> predictor_names;
  std::string response_name;
};

/// Splits a parsed table into design and response. `response_column` is
/// matched against the header names first, then read as a zero-based column
/// index. The response is numeric when every cell parses as a finite number
/// and categorical otherwise.
CsvDataset dataset_from_csv(const CsvTable& table, std::string_view response_column);

CsvDataset read_csv(const std::string& path, std::string_view response_column);

/// Writes "y,x1,...,xp" with 17 significant digits, enough for an exact
/// round trip through read_csv.
void write_dataset_csv(std::ostream& out, const Dataset& data);

/// Decimal with 17 significant digits.
std::string format_double(double value);

/// Version tag of the JSON produced by screening_json and report_json.
inline constexpr int kJsonSchemaVersion = 1;

/// Screening output for the CLI. `names` labels the predictors.
std::string screening_json(const ScreeningResult& result, const std::vector<std::string>& names,
                           const ScreenConfig& config, Index n);
std::string screening_table(const ScreeningResult& result, const std::vector<std::string>& names);
std::string screening_csv(const ScreeningResult& result, const std::vector<std::string>& names);

struct ScenarioReport;
std::string report_json(const ScenarioReport& report, const ScenarioConfig& config);

}  // namespace wls
