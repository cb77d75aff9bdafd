// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "cmf/suites.hpp"

using namespace cmf;

namespace {

struct Timed {
  Report report;
  double seconds;
};

Timed timed_run(SuiteConfig c) {
  auto t0 = std::chrono::steady_clock::now();
  Report r = run(c);
  return {r, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

// All records of `r` whose name starts with one of `prefixes`.
std::vector<const CheckRecord*> select(const Report& r, std::initializer_list<const char*> prefixes) {
  std::vector<const CheckRecord*> out;
  for (const auto& c : r.checks)
    for (const char* p : prefixes)
      if (c.name.rfind(p, 0) == 0) out.push_back(&c);
  return out;
}

int failures = 0;

void criterion(int n, const char* title, const std::vector<const CheckRecord*>& recs, double seconds, double budget,
               const std::string& detail) {
  bool ok = !recs.empty() && seconds < budget;
  for (const auto* c : recs) ok = ok && c->status == Status::pass;
  if (!ok) ++failures;
  std::printf("criterion %d %s  %s  [%zu checks, %.1f s < %.0f s]  %s\n", n, ok ? "PASS" : "FAIL", title, recs.size(),
              seconds, budget, detail.c_str());
  for (const auto* c : recs)
    if (c->status != Status::pass)
      std::printf("    %s %s: %.6g %s %.3g %s\n", to_string(c->status), c->name.c_str(), c->value, c->relation.c_str(),
                  c->threshold, c->note.c_str());
}

double worst(const std::vector<const CheckRecord*>& recs) {
  double w = 0;
  for (const auto* c : recs) w = std::max(w, c->value);
  return w;
}

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

int main() {
  SuiteConfig base;
  base.dims = {2, 3, 4};
  base.seed = 42;
  base.sizes = {64, 128, 256};
  base.fixture = CMF_FIXTURE_PATH;

  auto with = [&](const char* s) {
    SuiteConfig c = base;
    c.suite = s;
    return c;
  };

  Timed group = timed_run(with("group"));
  auto c1 = select(group.report, {"dilation_identity", "u_alpha_special_values", "conformal_energy_period"});
  criterion(1, "group identities (dilation identity, U(alpha), conformal period)", c1, group.seconds, 5,
            fmt("max residual %.3g", worst(c1)));
  criterion(2, "identity component of R(1) and P(1)", select(group.report, {"R1_identity", "P1_identity"}), group.seconds, 5,
            "R(1) in for d=2,3,4; P(1) in at d=3, out at d=4");
  criterion(3, "R(1)W1 = W1' and double complement on 10^4 samples",
            select(group.report, {"R1_W1_is_spacelike_complement", "double_complement"}), group.seconds, 5,
            "0 disagreements required");

  Timed flows = timed_run(with("flows"));
  auto c4 = select(flows.report, {"doublecone_equals_conjugated_wedge", "wedge_group_law", "doublecone_group_law",
                                  "cone_group_law", "wedge_preserves", "doublecone_preserves", "cone_preserves"});
  criterion(4, "flow coherence, group laws, region preservation", c4, flows.seconds, 10,
            fmt("coherence residual %.3g",
                worst(select(flows.report, {"doublecone_equals_conjugated_wedge"}))));

  Timed modular = timed_run(with("modular"));
  auto c5 = select(modular.report, {"S_squared", "J_squared", "J_Delta_J_inverse", "S_fixes_K", "flow_preserves_K",
                                    "J_maps_K_to_K_prime", "KMS_symmetry"});
  criterion(5, "Tomita relations on 100 random standard subspaces", c5, modular.seconds, 30,
            fmt("max residual %.3g", worst(c5)));

  Timed bw = timed_run(with("bw"));
  auto c6 = select(bw.report, {"bw_defect_strictly_decreasing", "bw_defect_below_ceiling", "z_group_law_below_ceiling"});
  std::string ladder;
  for (const auto* c : select(bw.report, {"bw_defect_t0.25"})) ladder += fmt("%.4g ", c->value);
  criterion(6, "BW defect decreasing over L = 64, 128, 256 and below the frozen ceiling", c6, bw.seconds, 600,
            "t = 0.25: " + ladder);

  Timed duality = timed_run(with("duality"));
  auto c7 = select(duality.report, {"duality_defect_strictly_decreasing", "rotation_invariance"});
  std::string dl;
  for (const auto* c : select(duality.report, {"duality_defect ["})) dl += fmt("%.3g ", c->value);
  criterion(7, "duality defect decreasing and rotation invariant", c7, bw.seconds + duality.seconds, 600,
            "defects " + dl + "(exact up to rounding)");

  Timed pct = timed_run(with("pct"));
  auto c8 = select(pct.report, {"pct_defect_strictly_decreasing", "J_squared"});
  std::string pl;
  for (const auto* c : select(pct.report, {"pct_defect ["})) pl += fmt("%.3g ", c->value);
  criterion(8, "PCT geometry defect decreasing, J^2 = I", c8, bw.seconds + duality.seconds + pct.seconds, 600,
            "defects " + pl + "(exact up to rounding)");

  auto c9 = select(bw.report, {"energy_trace"});
  criterion(9, "energy trace within the tail bound, beta = 0.5, 1, 2, N = 50", c9, 0, 1,
            fmt("max deviation %.3g", worst(c9)));

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
