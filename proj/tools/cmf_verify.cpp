// cmf-verify: runs the verification suites and writes a JSON report.
//
//   cmf-verify --suite group --d 2,3,4 --seed 42 --out report.json
//   cmf-verify --suite bw --sizes 64,128,256 --csv ladder.csv
//   cmf-verify calibrate --sizes 64,128,256 --out fixture.json
//   cmf-verify trajectory --flow cone --point 1,0,0,0 --t 0,0.5,1 --out traj.csv
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 configuration error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cmf/suites.hpp"

namespace {

constexpr int kPass = 0, kFail = 1, kConfig = 2;

template <class T>
std::vector<T> parse_list(const std::string& s, const char* what) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::stringstream is(item);
    T v;
    if (!(is >> v) || !(is >> std::ws).eof()) throw cmf::ConfigError(std::string("bad ") + what + " entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw cmf::ConfigError(std::string("empty ") + what + " list");
  return out;
}

// Opens (and so creates) the file early, so an unwritable path fails before any work.
void check_writable(const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::app);
  if (!f) throw cmf::ConfigError("cannot write to '" + path + "'");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write to '" + path + "'");
  f << text;
}

cmf::EnergyWeights parse_weights(const std::string& s) {
  if (s == "lattice") return cmf::EnergyWeights::lattice;
  if (s == "spectral") return cmf::EnergyWeights::spectral;
  throw cmf::ConfigError("unknown weights '" + s + "' (lattice, spectral)");
}

void print_checks(const cmf::Report& rep) {
  for (const auto& c : rep.checks) {
    std::printf("%-4s  %-8s %-58s %.6g", cmf::to_string(c.status), c.suite.c_str(), c.name.c_str(), c.value);
    if (c.relation == "<" || c.relation == "<=") std::printf(" %s %.3g", c.relation.c_str(), c.threshold);
    std::printf("\n");
  }
  std::printf("pass %d  fail %d  skip %d  (%.1f s)\n", rep.count(cmf::Status::pass), rep.count(cmf::Status::fail),
              rep.count(cmf::Status::skip), rep.wall_clock_s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal/modular verification driver"};
  app.set_version_flag("--version", cmf::kToolVersion);

  std::string suite = "all", dims = "2,3,4", sizes = "64,128,256", weights = "lattice";
  std::uint64_t seed = 42;
  std::vector<std::string> tols;
  std::string out, csv, fixture;
#ifdef CMF_DEFAULT_FIXTURE
  fixture = CMF_DEFAULT_FIXTURE;
#endif
  bool quiet = false;
  app.add_option("--suite", suite, "group, flows, modular, bw, duality, pct or all");
  app.add_option("--d", dims, "comma-separated spacetime dimensions");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--sizes", sizes, "comma-separated lattice sizes, increasing");
  app.add_option("--tol", tols, "tolerance override name=value (repeatable)");
  app.add_option("--out", out, "JSON report path");
  app.add_option("--csv", csv, "defect-vs-L CSV path");
  app.add_option("--fixture", fixture, "frozen BW ceiling (JSON); empty to skip the ceiling check");
  app.add_option("--weights", weights, "lattice or spectral energy weights");
  app.add_flag("--quiet", quiet, "print only the summary line");

  auto* cal = app.add_subcommand("calibrate", "run the BW ladder and freeze its ceiling into a fixture file");
  std::string cal_out;
  cal->add_option("--out", cal_out, "fixture path")->required();

  auto* traj = app.add_subcommand("trajectory", "export a canonical flow trajectory as CSV");
  std::string flow = "cone", point, tgrid = "0";
  std::string traj_out;
  traj->add_option("--flow", flow, "wedge, doublecone or cone");
  traj->add_option("--point", point, "comma-separated start point (x0,...,x_{d-1})")->required();
  traj->add_option("--t", tgrid, "comma-separated times");
  traj->add_option("--out", traj_out, "CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kPass : kConfig;
  }

  try {
    if (traj->parsed()) {
      auto x = parse_list<double>(point, "point");
      int d = static_cast<int>(x.size());
      if (d < 2) throw cmf::ConfigError("the point needs at least two coordinates");
      cmf::CanonicalFlow f = flow == "wedge"        ? cmf::wedge_flow(d)
                             : flow == "doublecone" ? cmf::doublecone_flow(d)
                             : flow == "cone"       ? cmf::cone_flow(d)
                                                    : throw cmf::ConfigError("unknown flow '" + flow + "'");
      auto ts = parse_list<double>(tgrid, "time");
      check_writable(traj_out);
      cmf::export_csv(traj_out, cmf::trajectory_header(d),
                      cmf::trajectory_rows(f, Eigen::Map<Eigen::VectorXd>(x.data(), d), ts));
      return kPass;
    }

    cmf::SuiteConfig c;
    c.suite = suite;
    c.dims = parse_list<int>(dims, "dimension");
    c.seed = seed;
    c.sizes = parse_list<int>(sizes, "size");
    c.weights = parse_weights(weights);
    c.fixture = fixture;
    for (const auto& t : tols) {
      auto eq = t.find('=');
      if (eq == std::string::npos) throw cmf::ConfigError("tolerance override must be name=value: '" + t + "'");
      c.tol[t.substr(0, eq)] = parse_list<double>(t.substr(eq + 1), "tolerance").at(0);
    }
    c.out = cal->parsed() ? cal_out : out;
    c.csv = csv;
    cmf::validate(c);
    check_writable(c.out);
    check_writable(c.csv);

    if (cal->parsed()) {
      auto lad = cmf::run_ladder(c, true, false, false);
      cmf::write_calibration(c.out, c, lad);
      for (const auto& e : lad)
        std::printf("L=%d  bw(t=0.25)=%.6g  z_max=%.6g\n", e.L, e.bw.defect_at(0.25), e.bw.z_max());
      return kPass;
    }

    cmf::Report rep = cmf::run(c);
    if (!quiet) print_checks(rep);
    else std::printf("pass %d  fail %d  skip %d\n", rep.count(cmf::Status::pass), rep.count(cmf::Status::fail),
                     rep.count(cmf::Status::skip));
    if (!c.out.empty()) write_text(c.out, rep.to_json().dump(2) + "\n");
    return rep.passed() ? kPass : kFail;
  } catch (const cmf::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kFail;
  }
}
