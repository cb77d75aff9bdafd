#pragma once
// Verification suites and their configuration.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmf/chiral.hpp"
#include "cmf/flows.hpp"
#include "cmf/report.hpp"

namespace cmf {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& suite_names();  // group, flows, modular, bw, duality, pct
const std::map<std::string, double>& default_tolerances();

struct SuiteConfig {
  std::string suite = "all";
  std::vector<int> dims{2, 3, 4};
  std::uint64_t seed = 42;
  std::vector<int> sizes{64, 128, 256};
  std::map<std::string, double> tol;  // overrides
  std::string out;
  std::string csv;                    // defect-vs-L export
  std::string fixture;                // frozen ceiling, optional
  EnergyWeights weights = EnergyWeights::lattice;

  double tolerance(const std::string& name) const;
  std::vector<std::string> expanded_suites() const;
  nlohmann::ordered_json to_json() const;
};

// Throws ConfigError for unknown suites, bad dimensions, sizes or tolerances.
void validate(const SuiteConfig& c);

// Generator for one suite: mt19937_64 seeded by seed_seq{seed, fnv1a(name)}.
std::mt19937_64 suite_rng(std::uint64_t seed, const std::string& name);

// Per-size chiral results on the half circle.
struct LadderEntry {
  int L = 0;
  unsigned digits = 0;
  BWReport bw;
  double duality = -1;
  double duality_rotated = -1;
  double duality_swapped = -1;
  double pct = -1;
  double j_squared = -1;
  double max_log_delta = 0;
};

struct BWCeiling {
  double ceiling = 0;  // max BW defect over the grid at the top size
  int L = 0;
};

std::optional<BWCeiling> load_ceiling(const std::string& path);
void write_calibration(const std::string& path, const SuiteConfig& c, const std::vector<LadderEntry>& ladder);

std::vector<LadderEntry> run_ladder(const SuiteConfig& c, bool need_bw, bool need_duality, bool need_pct);

// The PCT probe: an interval strictly inside the half circle.
IntervalOnCircle pct_probe();

Report run(const SuiteConfig& c);

// Ladder rows for CSV: L, digits, bw(t=0.25), z_max, duality, pct, max|log Δ|.
std::vector<std::string> ladder_header();
std::vector<CsvRow> ladder_rows(const std::vector<LadderEntry>& ladder);

// Rows (t, x₀, …, x_{d−1}); singular evaluations are skipped.
std::vector<CsvRow> trajectory_rows(const CanonicalFlow& f, const Point& x, const std::vector<double>& ts);
std::vector<std::string> trajectory_header(int d);

}  // namespace cmf
