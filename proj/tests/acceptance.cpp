// Acceptance gate: one line per criterion, non-zero exit if any fails.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "jwdvv/runs.hpp"

using namespace jwdvv;

namespace {

struct Timed {
  CheckOutcome outcome;
  double seconds = 0.0;
};

Timed timed_check(const std::string& name, const RunConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  Timed t{run_check(name, config), 0.0};
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

std::string describe(const CheckOutcome& o) {
  char buf[256];
  if (!o.error.empty())
    std::snprintf(buf, sizeof buf, "%s error: %s", o.name.c_str(), o.error.c_str());
  else
    std::snprintf(buf, sizeof buf, "%s %.3e < %.0e", o.name.c_str(), o.value, o.tolerance);
  return buf;
}

bool report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  return pass;
}

// Criterion built from a group of suite checks, optionally with a time budget.
bool group(int criterion, const std::vector<std::string>& names, const RunConfig& config,
           double budget_seconds = 0.0) {
  bool pass = true;
  double seconds = 0.0;
  std::string detail;
  for (const auto& n : names) {
    const Timed t = timed_check(n, config);
    pass = pass && t.outcome.pass;
    seconds += t.seconds;
    if (!detail.empty()) detail += "; ";
    detail += describe(t.outcome);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "; %.1f s", seconds);
  detail += buf;
  if (budget_seconds > 0.0 && seconds >= budget_seconds) {
    pass = false;
    std::snprintf(buf, sizeof buf, " (budget %.0f s)", budget_seconds);
    detail += buf;
  }
  return report(criterion, pass, detail);
}

bool negative_controls(const RunConfig& config) {
  bool pass = true;
  std::string detail;
  for (const std::string name : {"wdvv_checker.elliptic_l1", "wdvv_checker.elliptic_l2"}) {
    const CheckOutcome base = run_check(name, config);
    for (const bool flip : {true, false}) {
      RunConfig c = config;
      c.flip_metric_sign = flip;
      c.drop_single_terms = !flip;
      const CheckOutcome ctl = run_check(name, c);
      const double ratio = ctl.value / std::max(base.value, 1e-300);
      const bool ok = base.pass && ctl.error.empty() && !ctl.pass && ratio >= 1e6;
      pass = pass && ok;
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s%s %s %.3e vs %.3e (x%.1e)", detail.empty() ? "" : "; ", name.c_str(),
                    flip ? "flip" : "drop", ctl.value, base.value, ratio);
      detail += buf;
    }
  }
  return report(8, pass, detail);
}

bool determinism(const RunConfig& config) {
  const std::string a = run_suite(config).json.dump();
  const std::string b = run_suite(config).json.dump();
  return report(9, a == b, "suite reports " + std::string(a == b ? "identical" : "differ") + " (" +
                               std::to_string(a.size()) + " bytes)");
}

}  // namespace

int main() {
  const RunConfig config;
  bool all = true;
  all &= group(1, {"wdvv_checker.rational_l3"}, config, 30.0);
  all &= group(2, {"wdvv_checker.deformed_k_1_1_1_m1", "wdvv_checker.deformed_k_2_1_1_1"}, config);
  all &= group(3, {"wdvv_checker.elliptic_l1", "wdvv_checker.elliptic_l2"}, config, 300.0);
  all &= group(4, {"superpotential_oracle.rational_g", "superpotential_oracle.rational_cstar"}, config);
  all &= group(5, {"superpotential_oracle.elliptic_l1", "superpotential_oracle.elliptic_l2"}, config);
  all &= group(6,
               {"special_functions.appendix_dtau3_e4", "special_functions.appendix_dtau2_dz_zero",
                "special_functions.appendix_dtau_dz2_e2"},
               config);
  all &= group(7,
               {"special_functions.lambda_ladder", "special_functions.lambda0_log_derivative",
                "special_functions.lambda_parity", "special_functions.lambda3_trilog_relation",
                "special_functions.theta_series_vs_product", "special_functions.theta_quasi_modularity",
                "special_functions.polylog_inversion"},
               config);
  all &= negative_controls(config);
  all &= determinism(config);
  std::printf("acceptance: %s\n", all ? "PASS" : "FAIL");
  return all ? 0 : 1;
}
