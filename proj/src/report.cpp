#include "cmf/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace cmf {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "?";
}

CheckRecord below(std::string suite, std::string name, std::string anchor, double value, double threshold,
                  bool inclusive) {
  CheckRecord r{std::move(suite), std::move(name), std::move(anchor)};
  r.value = value;
  r.threshold = threshold;
  r.relation = inclusive ? "<=" : "<";
  bool ok = inclusive ? value <= threshold : value < threshold;
  r.status = ok ? Status::pass : Status::fail;
  return r;
}

CheckRecord holds(std::string suite, std::string name, std::string anchor, bool ok, double value, std::string note) {
  CheckRecord r{std::move(suite), std::move(name), std::move(anchor)};
  r.value = value;
  r.relation = "holds";
  r.status = ok ? Status::pass : Status::fail;
  r.note = std::move(note);
  return r;
}

int Report::count(Status s) const {
  int n = 0;
  for (const auto& c : checks) n += c.status == s;
  return n;
}

nlohmann::ordered_json Report::to_json(bool include_clock) const {
  nlohmann::ordered_json j;
  j["tool"] = "cmf-verify";
  j["version"] = kToolVersion;
  j["config"] = config;
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json r;
    r["suite"] = c.suite;
    r["name"] = c.name;
    r["anchor"] = c.anchor;
    r["status"] = to_string(c.status);
    r["value"] = c.value;
    r["threshold"] = c.threshold;
    r["relation"] = c.relation;
    if (!c.note.empty()) r["note"] = c.note;
    arr.push_back(r);
  }
  j["checks"] = arr;
  j["summary"] = {{"pass", count(Status::pass)}, {"fail", count(Status::fail)}, {"skip", count(Status::skip)}};
  if (include_clock) j["wall_clock_s"] = wall_clock_s;
  return j;
}

std::string format_csv(const std::vector<std::string>& header, const std::vector<CsvRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw std::invalid_argument("csv row width does not match header");
    for (size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << row[k];
    os << '\n';
  }
  return os.str();
}

void export_csv(const std::string& path, const std::vector<std::string>& header, const std::vector<CsvRow>& rows) {
  std::string text = format_csv(header, rows);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path);
}

}  // namespace cmf
