#pragma once
// Check records, JSON reports and CSV export for the verification driver.

#include <string>
#include <vector>

#include <json.hpp>

namespace cmf {

inline constexpr const char* kToolVersion = "1.0.0";

enum class Status { pass, fail, skip };
const char* to_string(Status s);

struct CheckRecord {
  std::string suite;
  std::string name;
  std::string anchor;  // the statement the check stands in for
  Status status = Status::skip;
  double value = 0;
  double threshold = 0;
  std::string relation;  // how value is compared with threshold
  std::string note;
};

// value < threshold (or <= when inclusive) decides the status.
CheckRecord below(std::string suite, std::string name, std::string anchor, double value, double threshold,
                  bool inclusive = false);
CheckRecord holds(std::string suite, std::string name, std::string anchor, bool ok, double value = 0,
                  std::string note = {});

struct Report {
  nlohmann::ordered_json config;
  std::vector<CheckRecord> checks;
  double wall_clock_s = 0;

  int count(Status s) const;
  bool passed() const { return count(Status::fail) == 0; }
  // Stable field order; include_clock = false gives the reproducible part.
  nlohmann::ordered_json to_json(bool include_clock = true) const;
};

using CsvRow = std::vector<double>;

// Header row, then rows with 17 significant digits, '\n' line endings.
void export_csv(const std::string& path, const std::vector<std::string>& header, const std::vector<CsvRow>& rows);
std::string format_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows);

}  // namespace cmf
